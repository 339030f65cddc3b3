"""Characters of Weyl modules: dimensions, weight multiplicities, and the
composition factors of reducible Weyl modules in positive characteristic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from .rootsystem import (
    RootSystem,
    Weight,
    build_root_system,
    dominant_representative,
    is_dominant,
    weyl_orbit,
)

EXCEPTIONAL = ("F4", "E6", "E7", "E8")

# High weights of L(G) and V_min, as fundamental-weight indices (1-based).
_MODULE_NODES = {
    "F4": {"adjoint": 1, "minimal": 4},
    "E6": {"adjoint": 2, "minimal": 1},
    "E7": {"adjoint": 1, "minimal": 7},
    "E8": {"adjoint": 8, "minimal": 8},
}


def fundamental_weight(rs: RootSystem, i: int) -> Weight:
    return tuple(int(j == i - 1) for j in range(rs.rank))


@dataclass(frozen=True)
class WeightSystem:
    high_weight: Weight
    multiplicities: Mapping[Weight, int]

    @property
    def dim(self) -> int:
        return sum(self.multiplicities.values())

    def dual(self, rs: RootSystem) -> WeightSystem:
        """Weights of the dual module."""
        mults = {tuple(-x for x in w): m for w, m in self.multiplicities.items()}
        top = max(mults, key=lambda w: sum(rs.weight_to_root(w)))
        return WeightSystem(top, MappingProxyType(mults))


def weyl_dim(rs: RootSystem, lam: Weight) -> int:
    """Weyl's dimension formula, evaluated exactly."""
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    lr = tuple(x + 1 for x in lam)
    num = Fraction(1)
    den = Fraction(1)
    for beta in rs.positive_roots:
        num *= rs.coroot_pairing(lr, beta)
        den *= rs.coroot_pairing(rs.rho, beta)
    out = num / den
    if out.denominator != 1:
        raise ArithmeticError("non-integral dimension")
    return int(out)


def _dominant_weights_below(rs: RootSystem, lam: Weight) -> list[Weight]:
    pos = [rs.root_to_weight(b) for b in rs.positive_roots]
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for a in pos:
            nu = tuple(x - y for x, y in zip(mu, a))
            if is_dominant(nu) and nu not in seen:
                seen.add(nu)
                stack.append(nu)
    return list(seen)


def freudenthal(rs: RootSystem, lam: Weight) -> WeightSystem:
    """All weights of W(lam) with multiplicities (Freudenthal's recursion)."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    dominant = _dominant_weights_below(rs, lam)

    def level(mu: Weight) -> Fraction:
        return sum(rs.weight_to_root(tuple(a - b for a, b in zip(lam, mu))), Fraction(0))

    dominant.sort(key=level)
    pos = [rs.root_to_weight(b) for b in rs.positive_roots]
    lr = tuple(x + 1 for x in lam)
    norm_top = rs.inner(lr, lr)
    mult: dict[Weight, int] = {lam: 1}
    for mu in dominant[1:]:
        total = Fraction(0)
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                m = mult.get(dominant_representative(rs, nu), 0)
                if m == 0:
                    # weights of W(lam) along an alpha-string are unbroken
                    break
                total += m * rs.inner(nu, a)
                k += 1
        mr = tuple(x + 1 for x in mu)
        val = 2 * total / (norm_top - rs.inner(mr, mr))
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity at {mu}")
        if val:
            mult[mu] = int(val)
    full: dict[Weight, int] = {}
    for mu, m in mult.items():
        for w in weyl_orbit(rs, mu):
            full[w] = m
    return WeightSystem(lam, MappingProxyType(full))


def adjoint_weights_from_roots(rs: RootSystem) -> WeightSystem:
    mults: dict[Weight, int] = {w: 1 for w in rs.roots_as_weights}
    mults[(0,) * rs.rank] = rs.rank
    return WeightSystem(rs.highest_root, MappingProxyType(mults))


def module_high_weight(group_type: str, which: str) -> Weight:
    if group_type not in _MODULE_NODES:
        raise ValueError(f"unsupported group type {group_type!r}")
    if which not in ("adjoint", "minimal"):
        raise ValueError(f"module must be 'adjoint' or 'minimal', not {which!r}")
    rs = build_root_system(group_type)
    return fundamental_weight(rs, _MODULE_NODES[group_type][which])


@lru_cache(maxsize=None)
def module_weights(group_type: str, which: str) -> WeightSystem:
    """Weights of L(G) (``adjoint``) or V_min (``minimal``) for exceptional G."""
    lam = module_high_weight(group_type, which)
    rs = build_root_system(group_type)
    if which == "adjoint" or lam == rs.highest_root:
        ws = adjoint_weights_from_roots(rs)
        if ws.high_weight != lam:
            raise AssertionError("adjoint high weight mismatch")
        return ws
    return freudenthal(rs, lam)


def same_module(group_type: str) -> bool:
    """True when V_min and L(G) coincide (E8)."""
    return module_high_weight(group_type, "adjoint") == module_high_weight(group_type, "minimal")


# Composition factors of Weyl modules

@dataclass(frozen=True)
class CompositionFactor:
    high_weight: Weight
    multiplicity: int
    dim: int

    @property
    def is_trivial(self) -> bool:
        return not any(self.high_weight)


@dataclass(frozen=True)
class WeylCompositionEntry:
    group_type: str
    high_weight: Weight
    p: int
    factors: tuple[CompositionFactor, ...]

    @property
    def trivial_multiplicity(self) -> int:
        return sum(f.multiplicity for f in self.factors if f.is_trivial)

    @property
    def is_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0].multiplicity == 1


_WEYL_LINE = re.compile(
    r"^weyl\s+(?P<g>\S+)\s+hw\s+(?P<hw>\S+)\s+p\s+(?P<p>\*|\d+)\s+factors\s+(?P<f>\S+)$"
)


def _weight(text: str, rank: int) -> Weight:
    parts = tuple(int(x) for x in text.split(","))
    if len(parts) != rank:
        raise ValueError(f"weight {text!r} should have {rank} coordinates")
    return parts


def parse_weyl_data(text: str) -> dict[tuple[str, Weight, int | None], WeylCompositionEntry]:
    """Parse lines ``weyl <G> hw <c,..> p <int|*> factors <hw>:<mult>:<dim>;...``.

    ``p *`` marks a module that is irreducible in every characteristic not
    listed separately.
    """
    out: dict[tuple[str, Weight, int | None], WeylCompositionEntry] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _WEYL_LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        g = m["g"]
        rs = build_root_system(g)
        hw = _weight(m["hw"], rs.rank)
        p = None if m["p"] == "*" else int(m["p"])
        factors = []
        for item in m["f"].split(";"):
            w, mult, dim = item.split(":")
            factors.append(CompositionFactor(_weight(w, rs.rank), int(mult), int(dim)))
        entry = WeylCompositionEntry(g, hw, 0 if p is None else p, tuple(factors))
        total = sum(f.multiplicity * f.dim for f in factors)
        if total != weyl_dim(rs, hw):
            raise ValueError(f"line {lineno}: factor dimensions sum to {total}, not {weyl_dim(rs, hw)}")
        for f in factors:
            if f.dim > weyl_dim(rs, f.high_weight):
                raise ValueError(f"line {lineno}: factor {f.high_weight} larger than its Weyl module")
        out[(g, hw, p)] = entry
    return out


def data_dir() -> Path:
    import os

    env = os.environ.get("FEASICHAR_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("feasichar") / "data"))


@lru_cache(maxsize=None)
def _weyl_table(path: str) -> dict:
    return parse_weyl_data(Path(path).read_text())


def weyl_composition_factors(group_type: str, lam: Weight, p: int) -> WeylCompositionEntry:
    table = _weyl_table(str(data_dir() / "weyl_factors.txt"))
    lam = tuple(lam)
    hit = table.get((group_type, lam, p)) if p > 0 else None
    if hit is not None:
        return hit
    generic = table.get((group_type, lam, None))
    if generic is None:
        raise KeyError(f"no composition data for {group_type} {lam}")
    return WeylCompositionEntry(group_type, lam, p, generic.factors)
