"""Exact arithmetic in the cyclotomic integers Z[zeta_n].

Values are kept in the power basis 1, z, ..., z^(phi(n)-1) modulo the n-th
cyclotomic polynomial, at the smallest conductor that contains them.  That
makes equality and hashing structural.  The embedding is z_n -> exp(2 pi i/n).
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "galois",
    "complex_conjugate",
    "norm",
    "lift_coeffs",
    "reduce_exponents",
]


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    out = n
    for q in _prime_factors(n):
        out = out // q * (q - 1)
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both lowest degree first; den monic
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dq]
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def reduce_exponents(n: int, coeffs: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """Reduce sum_j coeffs[j] z_n^j (any length) to the power basis."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    work = [0] * max(n, deg)
    for j, c in enumerate(coeffs):
        if c:
            work[j % n] += c
    for k in range(len(work) - 1, deg - 1, -1):
        c = work[k]
        if c:
            work[k] = 0
            base = k - deg
            for j in range(deg):
                if phi[j]:
                    work[base + j] -= c * phi[j]
    return tuple(work[:deg])


def lift_coeffs(coeffs: tuple[int, ...], n: int, m: int) -> tuple[int, ...]:
    """Rewrite a power-basis vector at conductor n as one at conductor m (n | m)."""
    if m % n:
        raise ValueError(f"{n} does not divide {m}")
    step = m // n
    spread = [0] * (step * len(coeffs))
    for j, c in enumerate(coeffs):
        spread[j * step] = c
    return reduce_exponents(m, spread)


@lru_cache(maxsize=None)
def _descent_data(n: int, q: int):
    """Square solve data for expressing Q(z_n) values at conductor n // q."""
    d = n // q
    phi_n = euler_phi(n)
    phi_d = euler_phi(d)
    cols = [lift_coeffs(tuple(int(i == j) for i in range(phi_d)), d, n) for j in range(phi_d)]
    # choose phi_d independent rows of the phi_n x phi_d matrix
    rows: list[int] = []
    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    for r in range(phi_n):
        vec = [Fraction(cols[j][r]) for j in range(phi_d)]
        for pv, e in zip(pivots, echelon):
            if vec[pv]:
                f = vec[pv] / e[pv]
                vec = [a - f * b for a, b in zip(vec, e)]
        nz = next((k for k, a in enumerate(vec) if a), None)
        if nz is not None:
            rows.append(r)
            echelon.append(vec)
            pivots.append(nz)
            if len(rows) == phi_d:
                break
    sub = [[Fraction(cols[j][r]) for j in range(phi_d)] for r in rows]
    # invert sub
    k = phi_d
    aug = [row + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(sub)]
    for c in range(k):
        p = next(r for r in range(c, k) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(k):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    inverse = [row[k:] for row in aug]
    return d, tuple(rows), inverse


def _try_descend(n: int, coeffs: tuple[int, ...], q: int) -> tuple[int, ...] | None:
    d, rows, inverse = _descent_data(n, q)
    target = [coeffs[r] for r in rows]
    sol = [sum(inv_row[j] * target[j] for j in range(len(rows))) for inv_row in inverse]
    if any(x.denominator != 1 for x in sol):
        return None
    small = tuple(int(x) for x in sol)
    if lift_coeffs(small, d, n) != coeffs:
        return None
    return small


def _canonical(n: int, coeffs: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    changed = True
    while changed and n > 1:
        changed = False
        for q in _prime_factors(n):
            small = _try_descend(n, coeffs, q)
            if small is not None:
                n, coeffs = n // q, small
                changed = True
                break
    return n, coeffs


class CyclotomicNumber:
    """An element of Z[zeta_n], stored at its minimal conductor."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs, *, reduced: bool = False):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        vec = tuple(int(c) for c in coeffs)
        if not reduced or len(vec) != euler_phi(conductor):
            vec = reduce_exponents(conductor, vec)
        n, vec = _canonical(conductor, vec)
        object.__setattr__(self, "conductor", n)
        object.__setattr__(self, "coeffs", vec)
        object.__setattr__(self, "_hash", hash((n, vec)))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    @classmethod
    def from_int(cls, a: int) -> CyclotomicNumber:
        return cls(1, (a,), reduced=True)

    @classmethod
    def coerce(cls, x) -> CyclotomicNumber:
        if isinstance(x, CyclotomicNumber):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CyclotomicNumber")

    # structure
    def at_conductor(self, m: int) -> tuple[int, ...]:
        """Power-basis coefficients at a conductor divisible by ours."""
        return lift_coeffs(self.coeffs, self.conductor, m)

    def is_integer(self) -> bool:
        return self.conductor == 1

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    # arithmetic
    def _align(self, other) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        other = CyclotomicNumber.coerce(other)
        m = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        return m, self.at_conductor(m), other.at_conductor(m)

    def __add__(self, other):
        try:
            m, a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber(m, [x + y for x, y in zip(a, b)], reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.conductor, [-x for x in self.coeffs], reduced=True)

    def __sub__(self, other):
        try:
            return self + (-CyclotomicNumber.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            m, a, b = self._align(other)
        except TypeError:
            return NotImplemented
        prod_ = [0] * (len(a) + len(b))
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod_[i + j] += x * y
        return CyclotomicNumber(m, prod_)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = CyclotomicNumber.from_int(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.conductor == 1 and self.coeffs[0] == other
        if isinstance(other, CyclotomicNumber):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(c * z**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"CyclotomicNumber({self.conductor}, {self.coeffs})"

    def __str__(self):
        return render(self)


def root_of_unity(n: int, k: int = 1) -> CyclotomicNumber:
    if n < 1:
        raise ValueError("order must be positive")
    vec = [0] * n
    vec[k % n] = 1
    return CyclotomicNumber(n, vec)


def galois(x: CyclotomicNumber, k: int) -> CyclotomicNumber:
    """Image of x under z -> z^k."""
    n = x.conductor
    if gcd(k, n) != 1:
        raise ValueError(f"Galois index {k} is not coprime to conductor {n}")
    vec = [0] * n
    for j, c in enumerate(x.coeffs):
        vec[(j * k) % n] += c
    return CyclotomicNumber(n, vec)


def complex_conjugate(x: CyclotomicNumber) -> CyclotomicNumber:
    return galois(x, -1 % x.conductor if x.conductor > 1 else 1)


def norm(x: CyclotomicNumber) -> int:
    """Product of all Galois conjugates; a rational integer."""
    n = x.conductor
    out = CyclotomicNumber.from_int(1)
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            out = out * galois(x, k)
    return int(out)


# text form "a + b*z7^2 - z7^3"

_TERM = re.compile(r"^(\d*)\*?(?:z(\d+)(?:\^(\d+))?)?$")


def render(x: CyclotomicNumber) -> str:
    n = x.conductor
    parts: list[tuple[int, str]] = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        if k == 0:
            parts.append((c, str(abs(c))))
            continue
        mono = f"z{n}" if k == 1 else f"z{n}^{k}"
        body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        parts.append((c, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
    for c, body in parts[1:]:
        out += (" - " if c < 0 else " + ") + body
    return out


def parse(text: str) -> CyclotomicNumber:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic value")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"malformed cyclotomic value {text!r}")
    total = CyclotomicNumber.from_int(0)
    for t in terms:
        sign = -1 if t[0] == "-" else 1
        body = t.lstrip("+-")
        m = _TERM.match(body)
        if not m or not body:
            raise ValueError(f"malformed term {t!r} in {text!r}")
        coef_s, order_s, exp_s = m.groups()
        if order_s is None:
            if not coef_s or "*" in body:
                raise ValueError(f"malformed term {t!r} in {text!r}")
            total = total + sign * int(coef_s)
            continue
        coef = int(coef_s) if coef_s else 1
        if coef_s and "*" not in body:
            raise ValueError(f"missing '*' in term {t!r}")
        order = int(order_s)
        if order < 1:
            raise ValueError(f"bad root order in {t!r}")
        exp = int(exp_s) if exp_s is not None else 1
        total = total + sign * coef * root_of_unity(order, exp)
    return total
