"""Feasible characters of a finite group H on L(G) and V_min.

Pipeline: fusion patterns (power-compatible maps from H-classes to torsion
classes of the simply connected G), nonnegative integer solutions of the
dimension and class equations, pairing of adjoint and minimal solutions
that come from a common pattern, orbit reduction under outer automorphisms
and duality, and the fixed-point and complete-reducibility filters.

Class equations are compared as integer vectors: a value on a class of
order n is written in the power basis of Q(z_n), so one equation per
coordinate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

import numpy as np

from .brauer import BrauerTable
from .cyclotomic import CyclotomicNumber
from .repchar import (
    WeightSystem,
    module_high_weight,
    module_weights,
    same_module,
    weyl_composition_factors,
)
from .torsion import (
    TorsionClass,
    enumerate_classes,
    identity_class,
    power_class,
    trace,
    trace_coeffs,
)

DEFAULT_MAX_ORDER = 37

# Largest dimension of a factor W in the non-G-cr test, by type of G.
NONGCR_DIM_BOUND = {"F4": 14, "E6": 20, "E7": 35, "E8": 64}

Assignment = dict[int, TorsionClass]


# ---------------------------------------------------------------- fusion


@dataclass(frozen=True)
class FusionPattern:
    """Images of the classes of H, in table order, in the simply connected G."""

    group_type: str
    classes: tuple[str, ...]
    images: tuple[TorsionClass, ...]

    def image(self, label: str) -> TorsionClass:
        return self.images[self.classes.index(label)]

    def as_dict(self) -> dict[str, TorsionClass]:
        return dict(zip(self.classes, self.images))


def _check_orders(t: BrauerTable, max_order: int) -> None:
    for c in t.classes:
        if t.p and c.order % t.p == 0:
            raise ValueError(f"class {c.label} has order divisible by p = {t.p}")
        if c.order > max_order:
            raise ValueError(f"class {c.label} has order {c.order} above the cap {max_order}")


def _generators(t: BrauerTable) -> list[int]:
    """Classes whose power-closed families cover every class, largest first."""
    covered = {t.identity}
    gens = []
    for i in sorted(range(len(t.classes)), key=lambda i: (-t.classes[i].order, i)):
        if i in covered:
            continue
        gens.append(i)
        covered.update(t.power_closed_family(i))
    return gens


@lru_cache(maxsize=None)
def _classes_of_order(group_type: str, n: int) -> tuple[TorsionClass, ...]:
    return tuple(enumerate_classes(group_type, n))


@lru_cache(maxsize=None)
def _power(c: TorsionClass, k: int) -> TorsionClass:
    if k % c.order == 0:
        return identity_class(c.group_type)
    return power_class(c, k % c.order)


def _generator_options(t: BrauerTable, i: int, group_type: str) -> list[Assignment]:
    """Power-compatible images of the family of class i, one per target of i."""
    n = t.classes[i].order
    out = []
    for target in _classes_of_order(group_type, n):
        assign: Assignment = {}
        ok = True
        for k in range(n):
            j = t.power(i, k)
            img = _power(target, k)
            if assign.setdefault(j, img) != img:
                ok = False
                break
        if ok:
            out.append(assign)
    return out


def _components(t: BrauerTable) -> list[list[int]]:
    """Generators grouped so that groups share no non-identity class."""
    gens = _generators(t)
    fams = {g: set(t.power_closed_family(g)) - {t.identity} for g in gens}
    parent = {g: g for g in gens}

    def find(g: int) -> int:
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    for a, b in itertools.combinations(gens, 2):
        if fams[a] & fams[b]:
            parent[find(b)] = find(a)
    groups: dict[int, list[int]] = {}
    for g in gens:
        groups.setdefault(find(g), []).append(g)
    return list(groups.values())


def _join(options: Sequence[Sequence[Assignment]]) -> Iterator[Assignment]:
    """Consistent unions, one option per generator, in lexicographic order."""

    def rec(k: int, acc: Assignment) -> Iterator[Assignment]:
        if k == len(options):
            yield dict(acc)
            return
        for opt in options[k]:
            if all(acc.get(j, img) == img for j, img in opt.items()):
                added = [j for j in opt if j not in acc]
                for j in added:
                    acc[j] = opt[j]
                yield from rec(k + 1, acc)
                for j in added:
                    del acc[j]

    yield from rec(0, {})


class FusionPatterns(Sequence[FusionPattern]):
    """All fusion patterns H -> G, as a lazily indexed product over components."""

    def __init__(self, t: BrauerTable, group_type: str, max_order: int = DEFAULT_MAX_ORDER):
        _check_orders(t, max_order)
        self.table = t
        self.group_type = group_type
        self._components = _components(t)
        self._options = [
            [_generator_options(t, g, group_type) for g in comp] for comp in self._components
        ]
        self._joined: list[list[Assignment] | None] = [None] * len(self._components)

    def component(self, k: int) -> list[Assignment]:
        if self._joined[k] is None:
            self._joined[k] = list(_join(self._options[k]))
        return self._joined[k]

    def __len__(self) -> int:
        total = 1
        for k in range(len(self._components)):
            total *= len(self.component(k))
        return total

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return [self[i] for i in range(*idx.indices(len(self)))]
        n = len(self)
        if idx < 0:
            idx += n
        if not 0 <= idx < n:
            raise IndexError("fusion pattern index out of range")
        assign: Assignment = {self.table.identity: identity_class(self.group_type)}
        for k in reversed(range(len(self._components))):
            opts = self.component(k)
            idx, r = divmod(idx, len(opts))
            assign.update(opts[r])
        return _pattern(self.table, self.group_type, assign)

    def __iter__(self) -> Iterator[FusionPattern]:
        comps = [self.component(k) for k in range(len(self._components))]
        base = {self.table.identity: identity_class(self.group_type)}
        for choice in itertools.product(*comps):
            assign = dict(base)
            for opt in choice:
                assign.update(opt)
            yield _pattern(self.table, self.group_type, assign)


def _pattern(t: BrauerTable, group_type: str, assign: Mapping[int, TorsionClass]) -> FusionPattern:
    return FusionPattern(group_type, tuple(t.class_labels), tuple(assign[i] for i in range(len(t.classes))))


def enumerate_fusion_patterns(
    t: BrauerTable, group_type: str, max_order: int = DEFAULT_MAX_ORDER
) -> FusionPatterns:
    """Every order- and power-map-preserving map from classes of H to classes of G.

    Only generators of power-closed families choose images; powers are forced.
    """
    return FusionPatterns(t, group_type, max_order)


def is_fusion_pattern(t: BrauerTable, f: FusionPattern) -> bool:
    for i, c in enumerate(t.classes):
        img = f.images[i]
        if img.order != c.order:
            return False
        for k in range(1, c.order + 1):
            if f.images[t.power(i, k)] != _power(img, k):
                return False
    return True


# ---------------------------------------------------------------- solving


def dimension_solutions(degrees: Sequence[int], dim: int) -> np.ndarray:
    """All nonnegative a with sum a_j deg_j = dim, as rows (columns in input order).

    Unknowns are assigned in decreasing degree; the last one is forced.
    """
    r = len(degrees)
    if r == 0:
        return np.zeros((1 if dim == 0 else 0, 0), dtype=np.int64)
    order = sorted(range(r), key=lambda j: (-degrees[j], j))
    degs = [degrees[j] for j in order]
    if any(d <= 0 for d in degs):
        raise ValueError("degrees must be positive")
    rows: list[tuple[int, ...]] = []
    cur = [0] * r

    def rec(k: int, left: int) -> None:
        if k == r - 1:
            if left % degs[k] == 0:
                cur[k] = left // degs[k]
                rows.append(tuple(cur))
            return
        for v in range(left // degs[k] + 1):
            cur[k] = v
            rec(k + 1, left - v * degs[k])
        cur[k] = 0

    rec(0, dim)
    out = np.zeros((len(rows), r), dtype=np.int64)
    if rows:
        out[:, order] = np.array(rows, dtype=np.int64)
    return out


def _class_values(t: BrauerTable, i: int) -> np.ndarray:
    """Values of all irreducibles on class i at conductor = class order."""
    n = t.classes[i].order
    return np.array([x.values[i].at_conductor(n) for x in t.irreducibles], dtype=np.int64).reshape(
        len(t.irreducibles), -1
    )


@lru_cache(maxsize=None)
def _trace_vec(c: TorsionClass, which: str) -> tuple[int, ...]:
    return trace_coeffs(c, module_weights(c.group_type, which))


def solve_module(t: BrauerTable, fusion: FusionPattern, ws: WeightSystem) -> list[tuple[int, ...]]:
    """Nonnegative multiplicity vectors matching the traces of ``fusion`` on ``ws``."""
    degrees = [x.degree for x in t.irreducibles]
    sols = dimension_solutions(degrees, ws.dim)
    keep = np.ones(len(sols), dtype=bool)
    for i, c in enumerate(t.classes):
        if i == t.identity:
            continue
        want = np.array(trace_coeffs(fusion.images[i], ws), dtype=np.int64)
        keep &= (sols @ _class_values(t, i) == want).all(axis=1)
    return [tuple(int(v) for v in row) for row in sols[keep]]


# ---------------------------------------------------------------- pairing


@dataclass(frozen=True)
class FeasibleCharacter:
    """A compatible pair of feasible characters on L(G) and V_min."""

    labels: tuple[str, ...]
    adjoint: tuple[int, ...]
    minimal: tuple[int, ...]
    fusion: FusionPattern | None = field(default=None, compare=False)
    possprim: bool | None = field(default=None, compare=False)
    nongcr: bool | None = field(default=None, compare=False)

    @property
    def mult_adjoint(self) -> dict[str, int]:
        return dict(zip(self.labels, self.adjoint))

    @property
    def mult_minimal(self) -> dict[str, int]:
        return dict(zip(self.labels, self.minimal))

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.adjoint, self.minimal)


class _Component:
    """Signatures of one component of the fusion data on both modules."""

    def __init__(self, t: BrauerTable, group_type: str, gens: list[int]):
        self.classes = sorted({j for g in gens for j in t.power_closed_family(g)} - {t.identity})
        self.values = np.concatenate([_class_values(t, i) for i in self.classes], axis=1)
        options = [_generator_options(t, g, group_type) for g in gens]
        # (adjoint signature, minimal signature) -> witness assignment
        self.witness: dict[tuple[bytes, bytes], Assignment] = {}
        for assign in _join_by_signature(self.classes, options):
            key = (self._sig(assign, "adjoint"), self._sig(assign, "minimal"))
            self.witness.setdefault(key, assign)
        self.adjoint_sigs = {a for a, _ in self.witness}
        self.minimal_sigs = {b for _, b in self.witness}

    def _sig(self, assign: Assignment, which: str) -> bytes:
        vec = [v for i in self.classes for v in _trace_vec(assign[i], which)]
        return np.array(vec, dtype=np.int64).tobytes()

    def signatures(self, sols: np.ndarray) -> list[bytes]:
        prod = sols @ self.values
        return [row.tobytes() for row in prod]


def _join_by_signature(classes: list[int], options: list[list[Assignment]]) -> list[Assignment]:
    """Consistent unions of generator options, deduplicated by class images.

    After each generator, classes no later generator touches are frozen to
    their trace signature; states agreeing on open images and frozen
    signatures are merged, keeping one witness.
    """
    last_use: dict[int, int] = {}
    for k, opts in enumerate(options):
        for j in (opts[0] if opts else {}):
            last_use[j] = k
    states: dict[tuple, Assignment] = {(): {}}
    for k, opts in enumerate(options):
        nxt: dict[tuple, Assignment] = {}
        for acc in states.values():
            for opt in opts:
                if any(acc.get(j, img) != img for j, img in opt.items()):
                    continue
                merged = {**acc, **opt}
                key = tuple(
                    (j, merged[j].label if last_use.get(j, -1) > k else _frozen(merged[j]))
                    for j in sorted(merged)
                    if j in last_use
                )
                nxt.setdefault(key, merged)
        states = nxt
    return list(states.values())


def _frozen(c: TorsionClass) -> tuple:
    return (_trace_vec(c, "adjoint"), _trace_vec(c, "minimal"))


def _filtered_solutions(comps: list[_Component], degrees: list[int], dim: int, which: str):
    sols = dimension_solutions(degrees, dim)
    sigs = [c.signatures(sols) for c in comps]
    allowed = [c.adjoint_sigs if which == "adjoint" else c.minimal_sigs for c in comps]
    out = []
    for r in range(len(sols)):
        if all(sigs[k][r] in allowed[k] for k in range(len(comps))):
            out.append((tuple(int(v) for v in sols[r]), [sigs[k][r] for k in range(len(comps))]))
    return out


def compatible_pairs(
    t: BrauerTable, group_type: str, max_order: int = DEFAULT_MAX_ORDER
) -> list[FeasibleCharacter]:
    """Pairs (L, V) of solutions coming from one fusion pattern, merged by multiplicities."""
    _check_orders(t, max_order)
    comps = [_Component(t, group_type, gens) for gens in _components(t)]
    if any(not c.witness for c in comps):
        return []
    degrees = [x.degree for x in t.irreducibles]
    dim_l = module_weights(group_type, "adjoint").dim
    dim_v = module_weights(group_type, "minimal").dim
    adj = _filtered_solutions(comps, degrees, dim_l, "adjoint")
    same = same_module(group_type)
    mins = adj if same else _filtered_solutions(comps, degrees, dim_v, "minimal")
    labels = tuple(t.irr_labels)
    out: dict[tuple, FeasibleCharacter] = {}
    for a, asig in adj:
        for b, bsig in mins:
            if same and a != b:
                continue
            keys = [(asig[k], bsig[k]) for k in range(len(comps))]
            if not all(key in c.witness for key, c in zip(keys, comps)):
                continue
            if (a, b) in out:
                continue
            assign: Assignment = {t.identity: identity_class(group_type)}
            for key, c in zip(keys, comps):
                assign.update(c.witness[key])
            out[(a, b)] = FeasibleCharacter(labels, a, b, _pattern(t, group_type, assign))
    return [out[k] for k in sorted(out)]


def single_module_characters(
    t: BrauerTable, group_type: str, which: str, max_order: int = DEFAULT_MAX_ORDER
) -> list[FeasibleCharacter]:
    """Feasible characters on one module alone; the other side is left zero."""
    _check_orders(t, max_order)
    comps = [_Component(t, group_type, gens) for gens in _components(t)]
    if any(not c.witness for c in comps):
        return []
    degrees = [x.degree for x in t.irreducibles]
    sols = _filtered_solutions(comps, degrees, module_weights(group_type, which).dim, which)
    side = 0 if which == "adjoint" else 1
    zero = (0,) * len(degrees)
    out = []
    for a, sig in sols:
        assign: Assignment = {t.identity: identity_class(group_type)}
        for k, c in enumerate(comps):
            assign.update(next(w for key, w in c.witness.items() if key[side] == sig[k]))
        pair = (a, zero) if side == 0 else (zero, a)
        fc = FeasibleCharacter(tuple(t.irr_labels), *pair, _pattern(t, group_type, assign))
        problems = check_feasible(t, fc, (which,))
        if problems:
            raise AssertionError(f"{a}: " + "; ".join(problems))
        out.append(fc)
    return dedup_by_outer(out, t)


def check_feasible(
    t: BrauerTable, fc: FeasibleCharacter, modules: Sequence[str] = ("adjoint", "minimal")
) -> list[str]:
    """Recompute both sides of every defining equation in cyclotomic arithmetic."""
    problems = []
    f = fc.fusion
    if f is None:
        return ["no fusion witness"]
    if not is_fusion_pattern(t, f):
        problems.append("witness is not a fusion pattern")
    for which, mults in (("adjoint", fc.adjoint), ("minimal", fc.minimal)):
        if which not in modules:
            continue
        ws = module_weights(f.group_type, which)
        if sum(m * x.degree for m, x in zip(mults, t.irreducibles)) != ws.dim:
            problems.append(f"{which}: dimension equation fails")
        for i, c in enumerate(t.classes):
            lhs = CyclotomicNumber.from_int(0)
            for m, x in zip(mults, t.irreducibles):
                lhs = lhs + m * x.values[i]
            if lhs != trace(f.images[i], ws):
                problems.append(f"{which}: class equation fails on {c.label}")
    return problems


# ---------------------------------------------------------------- symmetry


def _irr_generators(t: BrauerTable, duals: bool) -> list[tuple[tuple[int, ...], dict[int, int] | None]]:
    """(irreducible permutation, class permutation or None for inversion)."""
    gens = []
    for o in t.outer_actions:
        ip, cp = o.irr_perm, o.class_perm
        perm = tuple(t.irr_index[ip.get(x, x)] for x in t.irr_labels)
        cls = {t.class_index[a]: t.class_index[b] for a, b in cp.items()}
        gens.append((perm, cls))
    if duals:
        gens.append((tuple(t.dual_index(j) for j in range(len(t.irreducibles))), None))
    return gens


def _apply(t: BrauerTable, fc: FeasibleCharacter, gen) -> FeasibleCharacter:
    perm, cls = gen
    a = [0] * len(perm)
    b = [0] * len(perm)
    for j, tgt in enumerate(perm):
        a[tgt] = fc.adjoint[j]
        b[tgt] = fc.minimal[j]
    fusion = fc.fusion
    if fusion is not None:
        imgs = list(fusion.images)
        if cls is None:
            imgs = [_power(c, c.order - 1) for c in fusion.images]
        else:
            for src, dst in cls.items():
                imgs[dst] = fusion.images[src]
        fusion = FusionPattern(fusion.group_type, fusion.classes, tuple(imgs))
    return FeasibleCharacter(fc.labels, tuple(a), tuple(b), fusion, fc.possprim, fc.nongcr)


def orbit(t: BrauerTable, fc: FeasibleCharacter, duals: bool = True) -> list[FeasibleCharacter]:
    gens = _irr_generators(t, duals)
    seen = {fc.key: fc}
    stack = [fc]
    while stack:
        x = stack.pop()
        for g in gens:
            y = _apply(t, x, g)
            if y.key not in seen:
                seen[y.key] = y
                stack.append(y)
    return [seen[k] for k in sorted(seen)]


def canonical(t: BrauerTable, fc: FeasibleCharacter, duals: bool = True) -> FeasibleCharacter:
    """Lexicographically least (adjoint, minimal) in the orbit."""
    return orbit(t, fc, duals)[0]


def dedup_by_outer(
    results: Sequence[FeasibleCharacter], t: BrauerTable, duals: bool = True
) -> list[FeasibleCharacter]:
    """One representative per orbit of the outer automorphisms (and duality)."""
    reps: dict[tuple, FeasibleCharacter] = {}
    for fc in sorted(results, key=lambda x: x.key):
        rep = canonical(t, fc, duals)
        reps.setdefault(rep.key, rep)
    return [reps[k] for k in sorted(reps)]


def dual_character(t: BrauerTable, fc: FeasibleCharacter) -> FeasibleCharacter:
    return _apply(t, fc, (tuple(t.dual_index(j) for j in range(len(t.irreducibles))), None))


# ---------------------------------------------------------------- filters


def trivial_index(t: BrauerTable) -> int | None:
    for j, x in enumerate(t.irreducibles):
        if all(v == 1 for v in x.values):
            return j
    return None


def g_trivial_factors(group_type: str, which: str, p: int) -> int:
    """Trivial composition factors of the Weyl module L(G) or V_min in characteristic p."""
    hw = module_high_weight(group_type, which)
    return weyl_composition_factors(group_type, hw, p).trivial_multiplicity


def _fixed_point_forced(t: BrauerTable, mults: Sequence[int], triv: int) -> bool | None:
    """Whether criterion (i) or (iii) applies to a module with these factors.

    (i): more trivial factors than the total H^1 dimension of all factors.
    (iii): equality with both positive, and H^1(W) = 0 iff H^1(W*) = 0 for
    every factor W.
    """
    t_idx = trivial_index(t)
    m = mults[t_idx] - triv if t_idx is not None else -triv
    present = [j for j, k in enumerate(mults) if k and j != t_idx]
    h1 = [t.irreducibles[j].h1 for j in present]
    if any(h is None for h in h1):
        return None
    n = sum(mults[j] * h for j, h in zip(present, h1))
    if m > n:
        return True
    if m == n > 0:
        for j in present:
            hd = t.irreducibles[t.dual_index(j)].h1
            if hd is None:
                return None
            if (t.irreducibles[j].h1 == 0) != (hd == 0):
                return False
        return True
    return False


def mark_possprim(fc: FeasibleCharacter, t: BrauerTable, group_type: str, p: int) -> bool | None:
    """True when neither fixed-point criterion applies to L, V or V*."""
    results = [
        _fixed_point_forced(t, fc.adjoint, g_trivial_factors(group_type, "adjoint", p)),
    ]
    triv_v = g_trivial_factors(group_type, "minimal", p)
    results.append(_fixed_point_forced(t, fc.minimal, triv_v))
    dual = dual_character(t, fc)
    results.append(_fixed_point_forced(t, dual.minimal, triv_v))
    if any(r is True for r in results):
        return False
    if any(r is None for r in results):
        return None
    return True


def mark_nongcr(
    fc: FeasibleCharacter, t: BrauerTable, group_type: str, p: int, levi_embeddable: bool | None
) -> bool | None:
    """Necessary conditions for a non-G-completely-reducible subgroup."""
    t_idx = trivial_index(t)
    if t_idx is None:
        return False
    m = fc.adjoint[t_idx] - g_trivial_factors(group_type, "adjoint", p)
    if m <= 0:
        return False
    bound = NONGCR_DIM_BOUND[group_type]
    found: bool | None = False
    for j, k in enumerate(fc.adjoint):
        if not k or j == t_idx:
            continue
        x = t.irreducibles[j]
        if x.degree > bound:
            continue
        if not (k >= 2 or x.dual != x.label):
            continue
        if x.h1 is None:
            found = None
        elif x.h1 > 0:
            found = True
            break
    if found is False or levi_embeddable is False:
        return False
    if found is None or levi_embeddable is None:
        return None
    return True


def with_flags(
    fc: FeasibleCharacter, t: BrauerTable, group_type: str, levi_embeddable: bool | None
) -> FeasibleCharacter:
    return FeasibleCharacter(
        fc.labels,
        fc.adjoint,
        fc.minimal,
        fc.fusion,
        mark_possprim(fc, t, group_type, t.p),
        mark_nongcr(fc, t, group_type, t.p, levi_embeddable),
    )


def feasible_characters(
    t: BrauerTable,
    group_type: str,
    max_order: int = DEFAULT_MAX_ORDER,
    levi_embeddable: bool | None = None,
) -> list[FeasibleCharacter]:
    """Full pipeline: pairs, orbit representatives, flags, post hoc verification."""
    pairs = compatible_pairs(t, group_type, max_order)
    reps = dedup_by_outer(pairs, t)
    out = []
    for fc in reps:
        problems = check_feasible(t, fc)
        if problems:
            raise AssertionError(f"{fc.key}: " + "; ".join(problems))
        out.append(with_flags(fc, t, group_type, levi_embeddable))
    return out

