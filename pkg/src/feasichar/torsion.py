"""Conjugacy classes of finite-order elements in simply connected groups.

A torus element is t = exp(2 pi i x) for x in the coweight space.  Two
coordinate systems are used:

* ``Y``: coweight coordinates scaled by the order, ``Y_i = m * alpha_i(x)``.
  The Kac coordinates are ``(m - sum a_i Y_i, Y_1, ..., Y_r)`` when x lies in
  the fundamental alcove.
* ``K``: coroot coordinates scaled by the order, ``x = sum (K_i/m) alpha_i^vee``.
  Since the cartan matrix has row i equal to alpha_i in weight coordinates,
  ``Y = C K``.  A fundamental weight l_i pairs with x to ``K_i / m``, so the
  eigenvalue of t on a weight with coordinates c is ``z_m^(c . K)``.

t has order dividing m in the simply connected group exactly when K is
integral, because the cocharacter lattice is the coroot lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .cyclotomic import CyclotomicNumber, reduce_exponents
from .repchar import WeightSystem
from .rootsystem import RootSystem, build_root_system


@dataclass(frozen=True)
class _Lattice:
    rs: RootSystem
    adj: tuple[tuple[int, ...], ...]  # det * C^{-1}
    det: int
    theta_coweight: tuple[int, ...]  # alpha_j(theta^vee)
    marks: tuple[int, ...]
    minuscule: tuple[int, ...]  # 0-based nodes with mark 1


@lru_cache(maxsize=None)
def _lattice(group_type: str) -> _Lattice:
    rs = build_root_system(group_type)
    det = rs.determinant
    adj = tuple(tuple(int(x * det) for x in row) for row in rs.inverse_cartan)
    theta = rs.highest_root_marks
    th = []
    for j in range(rs.rank):
        e = tuple(int(i == j) for i in range(rs.rank))
        v = rs.coroot_pairing(rs.root_to_weight(e), theta)
        if v.denominator != 1:
            raise AssertionError("non-integral coroot pairing")
        th.append(int(v))
    mins = tuple(i for i, a in enumerate(theta) if a == 1)
    return _Lattice(rs, adj, det, tuple(th), theta, mins)


def _y_to_k(lat: _Lattice, y: Sequence[int]) -> tuple[int, ...] | None:
    r = lat.rs.rank
    out = []
    for i in range(r):
        num = sum(lat.adj[i][j] * y[j] for j in range(r))
        if num % lat.det:
            return None
        out.append(num // lat.det)
    return tuple(out)


@dataclass(frozen=True, order=True)
class TorsionClass:
    """Class of an element of exact order ``order``; ``kac`` is (s0, ..., sr)."""

    group_type: str
    order: int
    kac: tuple[int, ...]

    @property
    def y(self) -> tuple[int, ...]:
        return self.kac[1:]

    @cached_property
    def tuple_numerators(self) -> tuple[int, ...]:
        """K with x = K / order in the coroot basis."""
        k = _y_to_k(_lattice(self.group_type), self.y)
        if k is None:
            raise AssertionError("class point is not in the coroot lattice")
        return k

    @property
    def eigen_exponents(self) -> tuple[int, ...]:
        """n_i with l_i(t) = z_m^(n_i)."""
        return tuple(k % self.order for k in self.tuple_numerators)

    @property
    def label(self) -> str:
        return f"{self.order}:" + ",".join(map(str, self.kac))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.kac)) + f") order={self.order}"


def _descend(lat: _Lattice, y: list[int], m: int) -> list[int]:
    r = lat.rs.rank
    cartan = lat.rs.cartan
    while True:
        moved = False
        for i in range(r):
            if y[i] < 0:
                c = y[i]
                for j in range(r):
                    y[j] -= c * cartan[j][i]
                moved = True
                break
        if moved:
            continue
        height = sum(a * v for a, v in zip(lat.marks, y))
        if height > m:
            c = height - m
            for j in range(r):
                y[j] -= c * lat.theta_coweight[j]
            continue
        return y


def _from_y(group_type: str, y: Sequence[int], m: int) -> TorsionClass:
    lat = _lattice(group_type)
    if m < 1:
        raise ValueError("order must be positive")
    if len(y) != lat.rs.rank:
        raise ValueError("point has the wrong dimension")
    k = _y_to_k(lat, y)
    if k is None:
        raise ValueError("m * x is not in the coroot lattice")
    g = gcd(m, *k)
    m //= g
    yy = _descend(lat, [v // g for v in y], m)
    s0 = m - sum(a * v for a, v in zip(lat.marks, yy))
    return TorsionClass(lat.rs.type_label, m, (s0, *yy))


def normalize_to_alcove(group_type: str, point: Sequence[int], m: int) -> TorsionClass:
    """Class of exp(2 pi i x) with x = point / m in the coroot basis."""
    lat = _lattice(group_type)
    r = lat.rs.rank
    if len(point) != r:
        raise ValueError(f"point must have {r} coordinates")
    cartan = lat.rs.cartan
    y = [sum(cartan[i][j] * int(point[j]) for j in range(r)) for i in range(r)]
    return _from_y(group_type, y, m)


def identity_class(group_type: str) -> TorsionClass:
    r = build_root_system(group_type).rank
    return TorsionClass(build_root_system(group_type).type_label, 1, (1,) + (0,) * r)


def _solutions(marks: Sequence[int], total: int) -> Iterator[list[int]]:
    """All nonnegative (y_1..y_r) with sum marks_i y_i <= total, lexicographic."""
    r = len(marks)
    cur = [0] * r

    def rec(i: int, left: int):
        if i == r:
            yield list(cur)
            return
        for v in range(left // marks[i] + 1):
            cur[i] = v
            yield from rec(i + 1, left - v * marks[i])
        cur[i] = 0

    yield from rec(0, total)


def enumerate_classes(group_type: str, m: int) -> list[TorsionClass]:
    """One class per conjugacy class of elements of exact order m, sorted by kac."""
    if m < 1:
        raise ValueError("order must be positive")
    lat = _lattice(group_type)
    label = lat.rs.type_label
    out = []
    for y in _solutions(lat.marks, m):
        k = _y_to_k(lat, y)
        if k is None or gcd(m, *k) != 1:
            continue
        s0 = m - sum(a * v for a, v in zip(lat.marks, y))
        out.append(TorsionClass(label, m, (s0, *y)))
    out.sort(key=lambda c: c.kac)
    return out


def count_classes_dividing(group_type: str, d: int) -> int:
    """Number of classes of elements with t^d = 1."""
    lat = _lattice(group_type)
    r = lat.rs.rank
    det = lat.det
    # state: (weight used, residue of adj*y mod det)
    states: dict[tuple[int, tuple[int, ...]], int] = {(0, (0,) * r): 1}
    for i in range(r):
        col = tuple(lat.adj[j][i] % det for j in range(r))
        nxt: dict[tuple[int, tuple[int, ...]], int] = {}
        for (w, res), cnt in states.items():
            v = 0
            cur = res
            while w + v * lat.marks[i] <= d:
                key = (w + v * lat.marks[i], cur)
                nxt[key] = nxt.get(key, 0) + cnt
                v += 1
                cur = tuple((a + b) % det for a, b in zip(cur, col))
        states = nxt
    zero = (0,) * r
    return sum(c for (w, res), c in states.items() if res == zero)


def _mobius(n: int) -> int:
    out, q = 1, 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            out = -out
        q += 1
    return -out if n > 1 else out


def count_classes(group_type: str, m: int) -> int:
    """Number of classes of elements of exact order m (without enumerating)."""
    return sum(
        _mobius(m // d) * count_classes_dividing(group_type, d) for d in range(1, m + 1) if m % d == 0
    )


def power_class(c: TorsionClass, k: int) -> TorsionClass:
    if k < 1:
        raise ValueError("power must be positive")
    return _from_y(c.group_type, [k * v for v in c.y], c.order)


def central_shifts(c: TorsionClass) -> list[TorsionClass]:
    """Classes of z t for z in the centre (affine diagram rotations)."""
    lat = _lattice(c.group_type)
    det, m = lat.det, c.order
    out = []
    for j in (None, *lat.minuscule):
        y = [det * v for v in c.y]
        if j is not None:
            y[j] += m * det
        out.append(_from_y(c.group_type, y, m * det))
    return sorted(set(out))


def adjoint_equivalent(c1: TorsionClass, c2: TorsionClass) -> bool:
    if c1.group_type != c2.group_type:
        return False
    return c2 in central_shifts(c1)


class WeightMatrix:
    """Weights and multiplicities of a WeightSystem as integer arrays."""

    def __init__(self, ws: WeightSystem):
        items = sorted(ws.multiplicities.items())
        self.weights = np.array([w for w, _ in items], dtype=np.int64)
        self.mults = np.array([m for _, m in items], dtype=np.int64)
        self.dim = int(self.mults.sum())

    def exponent_histogram(self, c: TorsionClass) -> list[int]:
        m = c.order
        e = (self.weights @ np.array(c.tuple_numerators, dtype=np.int64)) % m
        return [int(v) for v in np.bincount(e, weights=self.mults, minlength=m).astype(np.int64)]


_MATRICES: dict[int, tuple[WeightSystem, WeightMatrix]] = {}


def weight_matrix(ws: WeightSystem) -> WeightMatrix:
    hit = _MATRICES.get(id(ws))
    if hit is None or hit[0] is not ws:
        hit = (ws, WeightMatrix(ws))
        _MATRICES[id(ws)] = hit
    return hit[1]


def trace_coeffs(c: TorsionClass, ws: WeightSystem) -> tuple[int, ...]:
    """Trace as power-basis coefficients at conductor ``c.order``."""
    return reduce_exponents(c.order, weight_matrix(ws).exponent_histogram(c))


def trace(c: TorsionClass, ws: WeightSystem) -> CyclotomicNumber:
    """Sum over weights of mult * z_m^(c . K)."""
    return CyclotomicNumber(c.order, weight_matrix(ws).exponent_histogram(c))
