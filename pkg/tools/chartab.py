"""Ordinary character tables of small permutation groups, computed from scratch.

Used offline to derive and cross-check the bundled Brauer tables.  The method
is the Burnside/Dixon one: class-sum structure constants, simultaneous
eigenvectors of the class matrices (numerically), then exact recovery of each
value in Z[zeta_n] from its Galois conjugates on the power classes.
"""

from __future__ import annotations

import itertools
import sys
from collections import deque
from math import gcd
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from feasichar.cyclotomic import CyclotomicNumber, euler_phi  # noqa: E402

Perm = tuple[int, ...]


def mul(a: Perm, b: Perm) -> Perm:
    """a then b."""
    return tuple(b[x] for x in a)


def inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def order(a: Perm) -> int:
    n, x = 1, a
    ident = tuple(range(len(a)))
    while x != ident:
        x = mul(x, a)
        n += 1
    return n


def power(a: Perm, k: int) -> Perm:
    out = tuple(range(len(a)))
    for _ in range(k):
        out = mul(out, a)
    return out


def closure(gens: list[Perm]) -> list[Perm]:
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mul(g, s)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return sorted(seen)


class Group:
    def __init__(self, gens: list[Perm]):
        self.gens = gens
        self.elements = closure(gens)
        self.order = len(self.elements)
        self._classes()

    def _classes(self):
        cls_of: dict[Perm, int] = {}
        classes: list[list[Perm]] = []
        for g in self.elements:
            if g in cls_of:
                continue
            idx = len(classes)
            orbit = {g}
            queue = deque([g])
            while queue:
                x = queue.popleft()
                for s in self.gens:
                    y = mul(mul(inv(s), x), s)
                    if y not in orbit:
                        orbit.add(y)
                        queue.append(y)
            for x in orbit:
                cls_of[x] = idx
            classes.append(sorted(orbit))
        # order by element order, then decreasing centraliser order (= increasing size)
        keyed = sorted(classes, key=lambda c: (order(c[0]), len(c), c[0]))
        self.classes = keyed
        self.cls_of = {x: i for i, c in enumerate(keyed) for x in c}
        self.reps = [c[0] for c in keyed]
        self.orders = [order(r) for r in self.reps]
        self.sizes = [len(c) for c in keyed]

    def class_of(self, g: Perm) -> int:
        return self.cls_of[g]

    def power_class(self, i: int, k: int) -> int:
        return self.cls_of[power(self.reps[i], k % self.orders[i])]

    def labels(self) -> list[str]:
        out, count = [], {}
        for o in self.orders:
            count[o] = count.get(o, 0) + 1
            out.append(f"{o}{'ABCDEFGHIJ'[count[o] - 1]}")
        return out

    def class_permutation(self, sigma: Perm) -> list[int]:
        """Image classes under conjugation by a normalising permutation."""
        return [self.cls_of[mul(mul(inv(sigma), r), sigma)] for r in self.reps]

    def structure_matrices(self) -> list[np.ndarray]:
        k = len(self.classes)
        # a[j][i][l] = #{x in C_j : x^-1 r_l in C_i}
        a = np.zeros((k, k, k))
        for l, r in enumerate(self.reps):
            for j, cj in enumerate(self.classes):
                for x in cj:
                    a[j, self.cls_of[mul(inv(x), r)], l] += 1
        return [a[j] for j in range(k)]

    def character_table(self) -> list[list[complex]]:
        k = len(self.classes)
        mats = self.structure_matrices()  # (C_j C_i = sum_l a[j][i][l] C_l)
        rng = np.random.default_rng(1)
        combo = sum(rng.normal() * m for m in mats)
        # omega(C_j) * omega(C_i) = sum_l a_jil omega(C_l): omega row vectors are
        # left eigenvectors of each a[j] viewed as (i, l) matrix acting omega -> a omega
        vals, vecs = np.linalg.eig(combo)
        chars = []
        for t in range(k):
            w = vecs[:, t]
            w = w / w[0]  # omega(identity) = 1
            deg2 = self.order / sum(abs(w[i]) ** 2 / self.sizes[i] for i in range(k))
            deg = np.sqrt(deg2.real)
            chars.append([w[i] * deg / self.sizes[i] for i in range(k)])
        chars.sort(key=lambda c: (round(c[0].real), [round(v.real, 6) for v in c]))
        return chars

    def exact_table(self) -> list[list[CyclotomicNumber]]:
        num = self.character_table()
        return [[self.recognise(ch, i) for i in range(len(ch))] for ch in num]

    def recognise(self, ch: list[complex], i: int) -> CyclotomicNumber:
        n = self.orders[i]
        units = [k for k in range(1, n + 1) if gcd(k, n) == 1]
        phi = euler_phi(n)
        # unknowns a_0..a_{phi-1} with sum a_j z^(jk) = ch[class of g^k]
        mat = np.array([[np.exp(2j * np.pi * j * k / n) for j in range(phi)] for k in units])
        rhs = np.array([ch[self.power_class(i, k)] for k in units])
        sol, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
        coeffs = [int(round(v.real)) for v in sol]
        for v, c in zip(sol, coeffs):
            if abs(v - c) > 1e-6:
                raise ArithmeticError(f"value on class {i} is not recognisable")
        out = CyclotomicNumber(n, coeffs)
        if abs(complex(out) - ch[i]) > 1e-6:
            raise ArithmeticError("recognition mismatch")
        return out


def check_orthogonality(g: Group, table: list[list[CyclotomicNumber]]) -> None:
    k = len(table)
    for a, b in itertools.product(range(k), repeat=2):
        s = sum(
            g.sizes[i] * complex(table[a][i]) * complex(table[b][i]).conjugate() for i in range(k)
        )
        expect = g.order if a == b else 0
        if abs(s - expect) > 1e-6:
            raise ArithmeticError(f"orthogonality fails for {a}, {b}")


# --- concrete groups ---------------------------------------------------------


def alt(n: int) -> Group:
    c3 = tuple([1, 2, 0] + list(range(3, n)))
    if n % 2:
        long = tuple(list(range(1, n)) + [0])
    else:
        long = tuple([0] + list(range(2, n)) + [1])
    return Group([c3, long])


def psl2(p: int) -> tuple[Group, list[Perm]]:
    """PSL(2, p) on the projective line, points 0..p-1 and infinity = p."""
    inf = p

    def mobius(a, b, c, d):
        img = []
        for x in range(p + 1):
            if x == inf:
                img.append(inf if c == 0 else a * pow(c, -1, p) % p)
                continue
            den = (c * x + d) % p
            img.append(inf if den == 0 else (a * x + b) * pow(den, -1, p) % p)
        return tuple(img)

    nonsq = next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)
    sq = nonsq * nonsq % p if p > 3 else 1
    gens = [mobius(1, 1, 0, 1), mobius(sq, 0, 0, 1), mobius(0, p - 1, 1, 0)]
    outer = [mobius(nonsq, 0, 0, 1)]
    return Group(gens), outer


class GF9:
    """GF(9) = F3[i]/(i^2 + 1), elements as pairs (a, b) = a + b i."""

    elems = [(a, b) for a in range(3) for b in range(3)]

    @staticmethod
    def add(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)

    @staticmethod
    def mul(x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % 3, (x[0] * y[1] + x[1] * y[0]) % 3)

    @staticmethod
    def frob(x):  # x^3
        return (x[0], (-x[1]) % 3)


def u33() -> tuple[Group, list[Perm]]:
    """SU(3,3) = U3(3) acting on the 28 isotropic points of PG(2, 9)."""
    F = GF9
    zero, one = (0, 0), (1, 0)

    def herm(u, v):  # antidiagonal form sum u_i v_{2-i}^3
        s = zero
        for i in range(3):
            s = F.add(s, F.mul(u[i], F.frob(v[2 - i])))
        return s

    vecs = [v for v in itertools.product(F.elems, repeat=3) if v != (zero,) * 3]
    iso = [v for v in vecs if herm(v, v) == zero]

    def normal(v):
        lead = next(x for x in v if x != zero)
        # multiply by inverse of lead
        inv_lead = next(y for y in F.elems if F.mul(lead, y) == one)
        return tuple(F.mul(inv_lead, x) for x in v)

    points = sorted({normal(v) for v in iso})
    index = {p: i for i, p in enumerate(points)}

    def apply(mat, v):
        return tuple(
            F.add(F.add(F.mul(mat[r][0], v[0]), F.mul(mat[r][1], v[1])), F.mul(mat[r][2], v[2]))
            for r in range(3)
        )

    def det(m):
        def t(a, b, c):
            return F.mul(F.mul(a, b), c)

        pos = F.add(F.add(t(m[0][0], m[1][1], m[2][2]), t(m[0][1], m[1][2], m[2][0])), t(m[0][2], m[1][0], m[2][1]))
        neg = F.add(F.add(t(m[0][2], m[1][1], m[2][0]), t(m[0][0], m[1][2], m[2][1])), t(m[0][1], m[1][0], m[2][2]))
        return F.add(pos, ((-neg[0]) % 3, (-neg[1]) % 3))

    # search for a few random unitary matrices with det 1 from isometry columns
    import random

    rnd = random.Random(7)
    gens = []
    e = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    while len(gens) < 3:
        c1 = rnd.choice(iso)
        c3s = [v for v in iso if herm(c1, v) == one]
        c3 = rnd.choice(c3s)
        perp = [v for v in vecs if herm(v, c1) == zero and herm(v, c3) == zero and herm(v, v) == one]
        c2 = rnd.choice(perp)
        # columns: image of e_i is c_i; form requires h(e1, e3) = 1, h(e2, e2) = 1
        mat = [[c1[r], c2[r], c3[r]] for r in range(3)]
        if det(mat) != one:
            continue
        assert all(herm(apply(mat, a), apply(mat, b)) == herm(a, b) for a in e for b in e)
        gens.append(tuple(index[normal(apply(mat, p))] for p in points))
    frob = tuple(index[normal(tuple(F.frob(x) for x in p))] for p in points)
    g = Group(gens)
    if g.order != 6048:
        raise AssertionError(f"generated group has order {g.order}")
    return g, [frob]


if __name__ == "__main__":
    for name, g in [("A5", alt(5)), ("A6", alt(6)), ("L2(7)", psl2(7)[0])]:
        t = g.exact_table()
        check_orthogonality(g, t)
        print(name, g.order, g.labels())
        for row in t:
            print("  ", "; ".join(str(v) for v in row))
    g, _ = u33()
    t = g.exact_table()
    check_orthogonality(g, t)
    print("U3(3)", g.order, g.labels(), g.sizes)
    for row in t:
        print("  ", "; ".join(str(v) for v in row))
