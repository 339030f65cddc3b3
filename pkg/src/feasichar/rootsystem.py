"""Root systems, weights and the Weyl group action.

Node numbering is Bourbaki's throughout.  The Cartan matrix is stored with
``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row ``i`` is the simple root
``alpha_i`` written in fundamental-weight coordinates.  The explicit matrices
for the exceptional types are::

    F4 (alpha1, alpha2 long)   E6 (2 attached to 4)      E7 / E8 likewise
    [ 2 -1  0  0]              1 - 3 - 4 - 5 - 6         1 - 3 - 4 - 5 - 6 - 7 (- 8)
    [-1  2 -2  0]                      |                         |
    [ 0 -1  2 -1]                      2                         2
    [ 0  0 -1  2]

With this numbering the adjoint modules are W(l1) for F4, W(l2) for E6,
W(l1) for E7, W(l8) for E8, and the minimal modules are W(l4), W(l1), W(l7),
W(l8) respectively.

Weights are plain integer tuples in fundamental-weight coordinates.  Roots
in ``positive_roots`` are integer tuples in simple-root coordinates.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, prod

Weight = tuple[int, ...]

_LABEL = re.compile(r"^([A-G])_?(\d+)$")


def _chain(rank: int) -> list[list[int]]:
    c = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        c[i][i] = 2
        if i + 1 < rank:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def _cartan_and_lengths(family: str, rank: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix and squared root lengths (long roots have length 2)."""
    if family == "A":
        if rank < 1:
            raise ValueError("A_n needs n >= 1")
        return _chain(rank), [2] * rank
    if family == "B":
        if rank < 2:
            raise ValueError("B_n needs n >= 2")
        c = _chain(rank)
        c[rank - 2][rank - 1] = -2
        return c, [2] * (rank - 1) + [1]
    if family == "C":
        if rank < 2:
            raise ValueError("C_n needs n >= 2")
        c = _chain(rank)
        c[rank - 1][rank - 2] = -2
        return c, [1] * (rank - 1) + [2]
    if family == "D":
        if rank < 3:
            raise ValueError("D_n needs n >= 3")
        c = _chain(rank)
        c[rank - 2][rank - 1] = c[rank - 1][rank - 2] = 0
        c[rank - 3][rank - 1] = c[rank - 1][rank - 3] = -1
        return c, [2] * rank
    if family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_n needs n in {6, 7, 8}")
        c = [[0] * rank for _ in range(rank)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, rank - 1)]
        for i in range(rank):
            c[i][i] = 2
        for i, j in edges:
            c[i][j] = c[j][i] = -1
        return c, [2] * rank
    if family == "F":
        if rank != 4:
            raise ValueError("F_n needs n = 4")
        c = _chain(4)
        c[1][2] = -2
        return c, [2, 2, 1, 1]
    if family == "G":
        if rank != 2:
            raise ValueError("G_n needs n = 2")
        # alpha1 short, alpha2 long
        return [[2, -1], [-3, 2]], [2, 6]
    raise ValueError(f"unknown family {family!r}")


def _invert(mat: list[list[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    root_lengths: tuple[int, ...]
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)
    highest_root_marks: tuple[int, ...]

    @property
    def affine_marks(self) -> tuple[int, ...]:
        return (1,) + self.highest_root_marks

    @cached_property
    def inverse_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        return _invert([list(r) for r in self.cartan])

    @cached_property
    def weight_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix of the fundamental weights, (l_i, l_j)."""
        inv = self.inverse_cartan
        r = self.rank
        return tuple(
            tuple(inv[j][i] * Fraction(self.root_lengths[i], 2) for j in range(r)) for i in range(r)
        )

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def highest_root(self) -> Weight:
        return self.root_to_weight(self.highest_root_marks)

    @cached_property
    def determinant(self) -> int:
        """Index of connection |P / Q|."""
        det = Fraction(1)
        a = [[Fraction(x) for x in row] for row in self.cartan]
        n = self.rank
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col] != 0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det *= a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return int(det)

    @cached_property
    def weyl_group_order(self) -> int:
        return factorial(self.rank) * prod(self.highest_root_marks) * self.determinant

    def root_to_weight(self, root: tuple[int, ...]) -> Weight:
        """Simple-root coordinates to fundamental-weight coordinates."""
        r = self.rank
        return tuple(sum(root[i] * self.cartan[i][j] for i in range(r)) for j in range(r))

    def weight_to_root(self, w: Weight) -> tuple[Fraction, ...]:
        """Fundamental-weight coordinates to (rational) simple-root coordinates."""
        inv = self.inverse_cartan
        r = self.rank
        return tuple(sum(w[i] * inv[i][j] for i in range(r)) for j in range(r))

    def inner(self, u: Weight, v: Weight) -> Fraction:
        g = self.weight_gram
        r = self.rank
        return sum((u[i] * g[i][j] * v[j] for i in range(r) for j in range(r)), Fraction(0))

    def root_length(self, root: tuple[int, ...]) -> Fraction:
        """Squared length of a root given in simple-root coordinates."""
        w = self.root_to_weight(root)
        return self.inner(w, w)

    def coroot_pairing(self, w: Weight, root: tuple[int, ...]) -> Fraction:
        """<w, beta^vee> for a root beta in simple-root coordinates."""
        beta = self.root_to_weight(root)
        return 2 * self.inner(w, beta) / self.inner(beta, beta)

    @cached_property
    def roots_as_weights(self) -> tuple[Weight, ...]:
        pos = [self.root_to_weight(b) for b in self.positive_roots]
        return tuple(pos + [tuple(-x for x in w) for w in pos])


def _positive_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                # <beta, alpha_i^vee>
                pairing = sum(beta[k] * cartan[k][i] for k in range(r))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    t = tuple(up)
                    if t not in roots:
                        roots.add(t)
                        nxt.append(t)
        layer = nxt
    return sorted(roots, key=lambda b: (sum(b), b))


@lru_cache(maxsize=None)
def build_root_system(type_label: str) -> RootSystem:
    """Root system for a label such as ``"E8"``, ``"F4"`` or ``"A_3"``."""
    m = _LABEL.match(type_label.strip())
    if not m:
        raise ValueError(f"unknown type label {type_label!r}")
    family, rank = m.group(1), int(m.group(2))
    cartan, lengths = _cartan_and_lengths(family, rank)
    roots = _positive_roots(cartan)
    top = max(roots, key=sum)
    if any(any(b[i] > top[i] for i in range(rank)) for b in roots):
        raise AssertionError("highest root is not maximal")
    return RootSystem(
        type_label=f"{family}{rank}",
        family=family,
        rank=rank,
        cartan=tuple(tuple(row) for row in cartan),
        root_lengths=tuple(lengths),
        positive_roots=tuple(roots),
        highest_root_marks=top,
    )


def _check_index(rs: RootSystem, i: int) -> None:
    if not 1 <= i <= rs.rank:
        raise IndexError(f"reflection index {i} outside 1..{rs.rank}")


def reflect(rs: RootSystem, i: int, w: Weight) -> Weight:
    """Simple reflection s_i (1-based) applied to a weight."""
    _check_index(rs, i)
    c = w[i - 1]
    if c == 0:
        return tuple(w)
    row = rs.cartan[i - 1]
    return tuple(x - c * a for x, a in zip(w, row))


def is_dominant(w: Weight) -> bool:
    return all(x >= 0 for x in w)


def weyl_orbit(rs: RootSystem, w: Weight) -> set[Weight]:
    start = tuple(w)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(rs.rank):
            if v[i] != 0:
                u = reflect(rs, i + 1, v)
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return seen


def dominant_representative(rs: RootSystem, w: Weight) -> Weight:
    v = tuple(w)
    while True:
        for i, x in enumerate(v):
            if x < 0:
                v = reflect(rs, i + 1, v)
                break
        else:
            return v


def dominates(rs: RootSystem, u: Weight, v: Weight) -> bool:
    """True when u - v is a nonnegative integer combination of simple roots."""
    diff = rs.weight_to_root(tuple(a - b for a, b in zip(u, v)))
    return all(x.denominator == 1 and x >= 0 for x in diff)
