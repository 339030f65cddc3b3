"""Brauer character tables: data model, text format and validation.

File grammar, one directive per line::

    group <name> p <int> exponent <int>
    class <label> order <int> pow <q>:<label> <q>:<label> ...
    irr <label> deg <int> ind <-1|0|1> dual <label> h1 <int|?> vals <v1>;<v2>;...
    out classes (<cycles>) irrs (<cycles>)

``#`` starts a comment.  Whole-line comments and blank lines are kept and
written back in place, so a file in canonical form survives a
parse/serialize round trip byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

from . import cyclotomic as cyc
from .cyclotomic import CyclotomicNumber

__all__ = [
    "ClassInfo",
    "Irreducible",
    "OuterAction",
    "BrauerTable",
    "BrauerFormatError",
    "BrauerValidationError",
    "Violation",
    "parse_table",
    "serialize_table",
    "validate",
    "load_table",
]


class BrauerFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Violation:
    check: str
    message: str

    def __str__(self) -> str:
        return f"[{self.check}] {self.message}"


class BrauerValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        super().__init__("; ".join(map(str, violations)))
        self.violations = list(violations)


@dataclass(frozen=True)
class ClassInfo:
    label: str
    order: int
    powers: tuple[tuple[int, str], ...] = ()

    @property
    def power_map(self) -> dict[int, str]:
        return dict(self.powers)


@dataclass(frozen=True)
class Irreducible:
    label: str
    degree: int
    indicator: int
    dual: str
    h1: int | None
    values: tuple[CyclotomicNumber, ...]


@dataclass(frozen=True)
class OuterAction:
    class_cycles: tuple[tuple[str, ...], ...]
    irr_cycles: tuple[tuple[str, ...], ...]

    @staticmethod
    def _perm(cycles: Iterable[Sequence[str]]) -> dict[str, str]:
        out: dict[str, str] = {}
        for cyc_ in cycles:
            for a, b in zip(cyc_, tuple(cyc_[1:]) + (cyc_[0],)):
                out[a] = b
        return out

    @property
    def class_perm(self) -> dict[str, str]:
        return self._perm(self.class_cycles)

    @property
    def irr_perm(self) -> dict[str, str]:
        return self._perm(self.irr_cycles)


@dataclass(frozen=True)
class BrauerTable:
    name: str
    p: int
    exponent: int
    classes: tuple[ClassInfo, ...]
    irreducibles: tuple[Irreducible, ...]
    outer_actions: tuple[OuterAction, ...] = ()
    # (number of directive lines before the comment, raw comment line)
    comments: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    @cached_property
    def class_index(self) -> dict[str, int]:
        return {c.label: i for i, c in enumerate(self.classes)}

    @cached_property
    def irr_index(self) -> dict[str, int]:
        return {x.label: i for i, x in enumerate(self.irreducibles)}

    @property
    def class_labels(self) -> list[str]:
        return [c.label for c in self.classes]

    @property
    def irr_labels(self) -> list[str]:
        return [x.label for x in self.irreducibles]

    @cached_property
    def identity(self) -> int:
        return next(i for i, c in enumerate(self.classes) if c.order == 1)

    def irr(self, label: str) -> Irreducible:
        return self.irreducibles[self.irr_index[label]]

    def value(self, irr_label: str, class_label: str) -> CyclotomicNumber:
        return self.irr(irr_label).values[self.class_index[class_label]]

    def power(self, i: int, k: int) -> int:
        """Index of the class of x^k for x in class i."""
        c = self.classes[i]
        n = c.order
        k %= n
        if k == 0:
            return self.identity
        if k == 1:
            return i
        q = _smallest_prime(k)
        pm = c.power_map
        if q not in pm:
            raise KeyError(f"class {c.label} has no {q}-power map")
        return self.power(self.class_index[pm[q]], k // q)

    def power_closed_family(self, i: int) -> list[int]:
        n = self.classes[i].order
        return sorted({self.power(i, k) for k in range(n)})

    def dual_index(self, j: int) -> int:
        return self.irr_index[self.irreducibles[j].dual]


def _smallest_prime(k: int) -> int:
    d = 2
    while d * d <= k:
        if k % d == 0:
            return d
        d += 1
    return k


# ---------------------------------------------------------------- parsing

_GROUP = re.compile(r"^group\s+(\S+)\s+p\s+(\d+)\s+exponent\s+(\d+)$")
_CLASS = re.compile(r"^class\s+(\S+)\s+order\s+(\d+)(?:\s+pow((?:\s+\d+:\S+)*))?$")
_IRR = re.compile(
    r"^irr\s+(\S+)\s+deg\s+(\d+)\s+ind\s+(-1|0|1)\s+dual\s+(\S+)\s+h1\s+(\d+|\?)\s+vals\s+(.+)$"
)
_OUT = re.compile(r"^out\s+classes\s+((?:\([^()]*\))+)\s+irrs\s+((?:\([^()]*\))+)$")
_CYCLE = re.compile(r"\(([^()]*)\)")


def _cycles(text: str, lineno: int) -> tuple[tuple[str, ...], ...]:
    text = text.strip()
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise BrauerFormatError(lineno, f"bad cycle notation {text!r}")
    out = []
    for body in _CYCLE.findall(text):
        items = tuple(x.strip() for x in body.split(",") if x.strip())
        if len(items) > 1:
            out.append(items)
    return tuple(out)


def _render_cycles(cycles: tuple[tuple[str, ...], ...]) -> str:
    if not cycles:
        return "()"
    return "".join("(" + ",".join(c) + ")" for c in cycles)


def parse_table(text: str, *, check: bool = True) -> BrauerTable:
    header = None
    classes: list[ClassInfo] = []
    irrs: list[Irreducible] = []
    outs: list[OuterAction] = []
    comments: list[tuple[int, str]] = []
    directives = 0
    stage = 0  # 0 header, 1 classes, 2 irrs, 3 outs
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            comments.append((directives, raw))
            continue
        line = raw.split("#", 1)[0].strip()
        word = line.split()[0]
        if header is None:
            m = _GROUP.match(line)
            if not m:
                raise BrauerFormatError(lineno, "expected 'group <name> p <int> exponent <int>'")
            header = (m.group(1), int(m.group(2)), int(m.group(3)))
            stage = 1
        elif word == "class":
            if stage != 1:
                raise BrauerFormatError(lineno, "class lines must precede irr and out lines")
            m = _CLASS.match(line)
            if not m:
                raise BrauerFormatError(lineno, f"malformed class line {line!r}")
            powers = []
            for item in (m.group(3) or "").split():
                q, lab = item.split(":", 1)
                powers.append((int(q), lab))
            classes.append(ClassInfo(m.group(1), int(m.group(2)), tuple(powers)))
        elif word == "irr":
            if stage not in (1, 2):
                raise BrauerFormatError(lineno, "irr lines must precede out lines")
            stage = 2
            m = _IRR.match(line)
            if not m:
                raise BrauerFormatError(lineno, f"malformed irr line {line!r}")
            label, deg, ind, dual, h1, vals = m.groups()
            try:
                values = tuple(cyc.parse(v) for v in vals.split(";"))
            except ValueError as exc:
                raise BrauerFormatError(lineno, str(exc)) from None
            if len(values) != len(classes):
                raise BrauerFormatError(
                    lineno, f"{len(values)} values for {len(classes)} classes in irr {label}"
                )
            irrs.append(
                Irreducible(label, int(deg), int(ind), dual, None if h1 == "?" else int(h1), values)
            )
        elif word == "out":
            stage = 3
            m = _OUT.match(line)
            if not m:
                raise BrauerFormatError(lineno, f"malformed out line {line!r}")
            outs.append(OuterAction(_cycles(m.group(1), lineno), _cycles(m.group(2), lineno)))
        else:
            raise BrauerFormatError(lineno, f"unknown directive {word!r}")
        directives += 1
    if header is None:
        raise BrauerFormatError(0, "missing group line")
    table = BrauerTable(
        name=header[0],
        p=header[1],
        exponent=header[2],
        classes=tuple(classes),
        irreducibles=tuple(irrs),
        outer_actions=tuple(outs),
        comments=tuple(comments),
    )
    if check:
        problems = validate(table)
        if problems:
            raise BrauerValidationError(problems)
    return table


def _class_line(c: ClassInfo) -> str:
    line = f"class {c.label} order {c.order}"
    if c.powers:
        line += " pow " + " ".join(f"{q}:{lab}" for q, lab in c.powers)
    return line


def _irr_line(x: Irreducible) -> str:
    h1 = "?" if x.h1 is None else str(x.h1)
    vals = ";".join(cyc.render(v) for v in x.values)
    return f"irr {x.label} deg {x.degree} ind {x.indicator} dual {x.dual} h1 {h1} vals {vals}"


def serialize_table(t: BrauerTable) -> str:
    lines = [f"group {t.name} p {t.p} exponent {t.exponent}"]
    lines += [_class_line(c) for c in t.classes]
    lines += [_irr_line(x) for x in t.irreducibles]
    lines += [
        f"out classes {_render_cycles(o.class_cycles)} irrs {_render_cycles(o.irr_cycles)}"
        for o in t.outer_actions
    ]
    out: list[str] = []
    pending = sorted(t.comments, key=lambda c: c[0])
    ci = 0
    for i, line in enumerate(lines):
        while ci < len(pending) and pending[ci][0] <= i:
            out.append(pending[ci][1])
            ci += 1
        out.append(line)
    out.extend(c[1] for c in pending[ci:])
    return "\n".join(out) + "\n"


def load_table(path: str | Path) -> BrauerTable:
    path = Path(path)
    try:
        return parse_table(path.read_text())
    except BrauerFormatError as exc:
        raise BrauerFormatError(exc.lineno, f"{path}: {exc}") from None


# ---------------------------------------------------------------- validation


def validate(t: BrauerTable) -> list[Violation]:
    out: list[Violation] = []

    def bad(check: str, msg: str) -> None:
        out.append(Violation(check, msg))

    labels = [c.label for c in t.classes]
    if len(set(labels)) != len(labels):
        bad("labels", "duplicate class labels")
    irr_labels = [x.label for x in t.irreducibles]
    if len(set(irr_labels)) != len(irr_labels):
        bad("labels", "duplicate irreducible labels")
    if t.p < 0:
        bad("characteristic", "p must be nonnegative")
    idents = [c for c in t.classes if c.order == 1]
    if len(idents) != 1:
        bad("identity", f"expected one class of order 1, found {len(idents)}")
        return out
    ident = t.classes.index(idents[0])
    index = t.class_index

    for c in t.classes:
        if c.order < 1:
            bad("order", f"class {c.label} has nonpositive order")
            continue
        if t.p and c.order % t.p == 0:
            bad("p-regular", f"class {c.label} has order {c.order} divisible by p = {t.p}")
        if t.exponent % c.order:
            bad("exponent", f"class {c.label} order {c.order} does not divide exponent {t.exponent}")
        for q, lab in c.powers:
            if lab not in index:
                bad("power-map", f"class {c.label}: {q}-power {lab} is not a class")
                continue
            want = c.order // gcd(q, c.order)
            got = t.classes[index[lab]].order
            if got != want:
                bad("power-map", f"class {c.label}: {q}-power {lab} has order {got}, expected {want}")
    if out:
        return out
    for i, c in enumerate(t.classes):
        for k in range(1, c.order + 1):
            try:
                t.power(i, k)
            except KeyError as exc:
                bad("power-map", f"class {c.label}: cannot form power {k} ({exc.args[0]})")
                break
            except RecursionError:
                bad("power-map", f"class {c.label}: power maps do not terminate")
                break
    if out:
        return out

    for x in t.irreducibles:
        if len(x.values) != len(t.classes):
            bad("values", f"irr {x.label} has {len(x.values)} values for {len(t.classes)} classes")
            continue
        if x.values[ident] != x.degree:
            bad("degree", f"irr {x.label}: value {x.values[ident]} at identity differs from degree {x.degree}")
        if x.indicator not in (-1, 0, 1):
            bad("indicator", f"irr {x.label}: indicator {x.indicator} not in -1, 0, 1")
        if x.h1 is not None and x.h1 < 0:
            bad("h1", f"irr {x.label}: negative H^1 dimension")
        if t.p == 0 and x.h1:
            bad("h1", f"irr {x.label}: nonzero H^1 in characteristic 0")
        if x.dual not in t.irr_index:
            bad("dual", f"irr {x.label}: dual {x.dual} is not an irreducible")
            continue
        d = t.irr(x.dual)
        if d.dual != x.label:
            bad("dual", f"irr {x.label}: dual pairing with {x.dual} is not symmetric")
        if (x.indicator != 0) != (x.dual == x.label):
            bad("indicator", f"irr {x.label}: indicator {x.indicator} inconsistent with dual {x.dual}")
        if len(d.values) == len(x.values):
            for c, a, b in zip(t.classes, x.values, d.values):
                if cyc.complex_conjugate(a) != b:
                    bad("dual", f"irr {x.label} on {c.label}: dual value is not the complex conjugate")
                    break
        for i, c in enumerate(t.classes):
            v = x.values[i]
            if c.order % v.conductor:
                bad("galois", f"irr {x.label} on {c.label}: value conductor {v.conductor} does not divide {c.order}")
                continue
            for k in range(2, c.order):
                if gcd(k, c.order) != 1:
                    continue
                if x.values[t.power(i, k)] != cyc.galois(v, k % v.conductor or 1):
                    bad("galois", f"irr {x.label} on {c.label}: value on power {k} is not the Galois image")
                    break

    for n, o in enumerate(t.outer_actions, 1):
        cp, ip = o.class_perm, o.irr_perm
        if any(a not in index for a in cp) or sorted(cp) != sorted(cp.values()):
            bad("outer", f"out #{n}: class permutation is not a bijection of class labels")
            continue
        if any(a not in t.irr_index for a in ip) or sorted(ip) != sorted(ip.values()):
            bad("outer", f"out #{n}: irreducible permutation is not a bijection of labels")
            continue
        for c in t.classes:
            img = t.classes[index[cp.get(c.label, c.label)]]
            if img.order != c.order:
                bad("outer", f"out #{n}: {c.label} and its image have different orders")
            for q, lab in c.powers:
                want = cp.get(lab, lab)
                if img.power_map.get(q, want) != want:
                    bad("outer", f"out #{n}: {q}-power map not preserved at {c.label}")
        for x in t.irreducibles:
            y = t.irr(ip.get(x.label, x.label))
            if (y.degree, y.indicator, y.h1) != (x.degree, x.indicator, x.h1):
                bad("outer", f"out #{n}: {x.label} and its image differ in degree, indicator or H^1")
            if ip.get(x.dual, x.dual) != y.dual:
                bad("outer", f"out #{n}: action does not commute with duality at {x.label}")
            for c in t.classes:
                if y.values[index[cp.get(c.label, c.label)]] != x.values[index[c.label]]:
                    bad("outer", f"out #{n}: values of {x.label} not carried to {y.label}")
                    break
    return out
