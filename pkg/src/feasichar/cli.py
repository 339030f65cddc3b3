"""Command-line front end: roots, torsion, solve, verify."""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import cyclotomic as cyc
from .brauer import BrauerFormatError, BrauerTable, BrauerValidationError, load_table
from .feasible import (
    DEFAULT_MAX_ORDER,
    FeasibleCharacter,
    canonical,
    feasible_characters,
    single_module_characters,
)
from .repchar import EXCEPTIONAL, data_dir, module_high_weight, module_weights, same_module, weyl_dim
from .rootsystem import build_root_system
from .torsion import enumerate_classes, trace

MODULES = ("adjoint", "minimal")


class CliError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    group_type: str
    brauer_path: Path
    modules: tuple[str, ...] = MODULES
    max_order: int = DEFAULT_MAX_ORDER
    fmt: str = "table"
    verbose: bool = False


# ---------------------------------------------------------------- data


def resolve_table_path(name: str | Path) -> Path:
    path = Path(name)
    if path.exists():
        return path
    bundled = data_dir() / "tables" / path.name
    for candidate in (bundled, bundled.with_name(bundled.name + ".bct")):
        if candidate.exists():
            return candidate
    raise CliError(f"{name}: no such Brauer table (also looked in {bundled.parent})")


def read_table(path: Path) -> BrauerTable:
    try:
        return load_table(path)
    except BrauerFormatError as exc:
        raise CliError(str(exc)) from None
    except BrauerValidationError as exc:
        raise CliError(f"{path}: invalid table: {exc}") from None
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}") from None


def load_levi(group_type: str, name: str, p: int) -> bool | None:
    """Whether H embeds in a proper Levi subgroup of G, from levi.txt (None if unlisted)."""
    path = data_dir() / "levi.txt"
    if not path.exists():
        return None
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) != 4 or line[3] not in ("yes", "no"):
            raise CliError(f"{path}: line {lineno}: expected '<G> <H> <p> yes|no'")
        if (line[0], line[1], line[2]) == (group_type, name, str(p)):
            return line[3] == "yes"
    return None


# ---------------------------------------------------------------- rendering


def _flag(v: bool | None) -> str:
    return "?" if v is None else ("yes" if v else "no")


def _module_title(group_type: str, which: str) -> str:
    return f"V{module_weights(group_type, which).dim}"


def _blocks(group_type: str, modules: Sequence[str]) -> list[str]:
    if same_module(group_type):
        return ["adjoint"]
    return list(modules)


def render_table(
    t: BrauerTable,
    group_type: str,
    rows: Sequence[FeasibleCharacter],
    modules: Sequence[str] = MODULES,
    flags: bool = True,
    verbose: bool = False,
) -> str:
    blocks = _blocks(group_type, modules)
    labels = t.irr_labels
    width = max(3, *(len(x) for x in labels)) + 1

    def cells(values: Sequence[object]) -> str:
        return "".join(str(v).ljust(width) for v in values)

    block_width = width * len(labels)
    lines = [f"{t.name} < {group_type}, p = {t.p}"]
    tail = " | possprim nongcr" if flags else ""
    lines.append(
        "     " + " | ".join(_module_title(group_type, b).ljust(block_width) for b in blocks) + (" |" if flags else "")
    )
    lines.append("     " + " | ".join(cells(labels) for _ in blocks) + tail)
    for n, fc in enumerate(rows, 1):
        mults = [fc.adjoint if b == "adjoint" else fc.minimal for b in blocks]
        line = f"{n})".ljust(5) + " | ".join(cells(m) for m in mults)
        if flags:
            line += " | " + _flag(fc.possprim).ljust(9) + _flag(fc.nongcr)
        lines.append(line.rstrip())
        if verbose and fc.fusion is not None:
            for lab, img in zip(fc.fusion.classes, fc.fusion.images):
                lines.append(f"#    {lab} -> {img}")
    perms = [o for o in t.outer_actions if o.irr_cycles]
    if perms:
        lines.append(
            "Permutations: "
            + ", ".join("".join("(" + ",".join(c) + ")" for c in o.irr_cycles) for o in perms)
            + "."
        )
    if group_type == "F4" and t.p == 2:
        lines.append("# note: for F4 in characteristic 2 the adjoint Weyl module has factors L(l1) and L(l4).")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def render_lines(
    t: BrauerTable,
    group_type: str,
    rows: Sequence[FeasibleCharacter],
    modules: Sequence[str] = MODULES,
    flags: bool = True,
    verbose: bool = False,
) -> str:
    blocks = _blocks(group_type, modules)
    out = [f"table {t.name} {group_type} {t.p}"]
    for b in blocks:
        out.append(f"columns {b} " + ",".join(t.irr_labels))
    for n, fc in enumerate(rows, 1):
        parts = [f"row {n}"]
        for b in blocks:
            m = fc.adjoint if b == "adjoint" else fc.minimal
            parts.append(f"{b} " + ",".join(map(str, m)))
        if flags:
            parts.append(f"possprim {_flag(fc.possprim)} nongcr {_flag(fc.nongcr)}")
        out.append(" ".join(parts))
        if verbose and fc.fusion is not None:
            out.append(
                f"fusion {n} " + " ".join(f"{lab}={img.label}" for lab, img in zip(fc.fusion.classes, fc.fusion.images))
            )
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- expected tables


@dataclass(frozen=True)
class ExpectedRow:
    number: str
    blocks: dict[str, dict[str, int]]
    possprim: bool | None
    nongcr: bool | None


@dataclass(frozen=True)
class ExpectedTable:
    name: str
    group_type: str
    p: int
    rows: list[ExpectedRow]


_TITLE = re.compile(r"^(\S+)\s+<\s+(\S+),\s+p\s+=\s+(\d+)$")
_FLAGS = {"yes": True, "no": False, "?": None}


def parse_expected(text: str, source: str = "<expected>") -> ExpectedTable:
    """Read a result table in the table grammar (or the lines grammar)."""
    lines = [(n, raw.rstrip()) for n, raw in enumerate(text.splitlines(), 1)]
    lines = [(n, raw) for n, raw in lines if raw.strip() and not raw.lstrip().startswith("#")]
    if not lines:
        raise CliError(f"{source}: empty table")

    def err(n: int, msg: str) -> CliError:
        return CliError(f"{source}: line {n}: {msg}")

    first = lines[0][1].split()
    if first[0] == "table":
        return _parse_lines_grammar(lines, err)
    m = _TITLE.match(lines[0][1].strip())
    if not m:
        raise err(lines[0][0], "expected '<H> < <G>, p = <p>'")
    name, group_type, p = m.group(1), m.group(2), int(m.group(3))
    if len(lines) < 3:
        raise err(lines[-1][0], "missing header lines")
    titles = [s.strip() for s in lines[1][1].split("|")]
    titles = [s for s in titles if s]
    heads = [s.split() for s in lines[2][1].split("|")]
    if len(heads) != len(titles) + 1 or heads[-1] != ["possprim", "nongcr"]:
        raise err(lines[2][0], "header must list labels per module then 'possprim nongcr'")
    blocks = [_title_to_module(group_type, s, lambda msg: err(lines[1][0], msg)) for s in titles]
    rows = []
    for n, raw in lines[3:]:
        if raw.startswith("Permutations:"):
            continue
        parts = raw.split("|")
        if len(parts) != len(blocks) + 1:
            raise err(n, f"expected {len(blocks) + 1} '|'-separated fields")
        first = parts[0].split()
        if not first or not first[0].endswith(")"):
            raise err(n, "row must start with '<n>)'")
        cols = [first[1:]] + [p_.split() for p_ in parts[1:-1]]
        data = {}
        for b, labels, vals in zip(blocks, heads[:-1], cols):
            if len(vals) != len(labels):
                raise err(n, f"{len(vals)} entries for {len(labels)} labels")
            try:
                data[b] = dict(zip(labels, map(int, vals)))
            except ValueError:
                raise err(n, "multiplicities must be integers") from None
        flags = parts[-1].split()
        if len(flags) != 2 or any(f not in _FLAGS for f in flags):
            raise err(n, "flags must be two of yes, no, ?")
        rows.append(ExpectedRow(first[0], data, _FLAGS[flags[0]], _FLAGS[flags[1]]))
    return ExpectedTable(name, group_type, p, rows)


def _title_to_module(group_type: str, title: str, err) -> str:
    for b in MODULES:
        if title == _module_title(group_type, b):
            return b
    raise err(f"unknown module {title!r} for {group_type}")


def _parse_lines_grammar(lines, err) -> ExpectedTable:
    head = lines[0][1].split()
    if len(head) != 4:
        raise err(lines[0][0], "expected 'table <H> <G> <p>'")
    name, group_type, p = head[1], head[2], int(head[3])
    columns: dict[str, list[str]] = {}
    rows = []
    for n, raw in lines[1:]:
        words = raw.split()
        if words[0] == "columns" and len(words) == 3:
            columns[words[1]] = words[2].split(",")
        elif words[0] == "row":
            it = iter(words[2:])
            data, flags = {}, {}
            for key in it:
                val = next(it, None)
                if val is None:
                    raise err(n, f"missing value for {key}")
                if key in columns:
                    data[key] = dict(zip(columns[key], map(int, val.split(","))))
                elif key in ("possprim", "nongcr") and val in _FLAGS:
                    flags[key] = _FLAGS[val]
                else:
                    raise err(n, f"unknown field {key} {val}")
            rows.append(ExpectedRow(words[1], data, flags.get("possprim"), flags.get("nongcr")))
        elif words[0] != "fusion":
            raise err(n, f"unknown directive {words[0]!r}")
    return ExpectedTable(name, group_type, p, rows)


def expected_characters(t: BrauerTable, exp: ExpectedTable, source: str) -> list[tuple[str, FeasibleCharacter]]:
    labels = tuple(t.irr_labels)
    out = []
    for row in exp.rows:
        for block in row.blocks.values():
            unknown = set(block) - set(labels)
            if unknown:
                raise CliError(f"{source}: row {row.number}: unknown irreducibles {sorted(unknown)}")
        adj = row.blocks.get("adjoint", {})
        mnl = row.blocks.get("minimal", adj if same_module(exp.group_type) else {})
        fc = FeasibleCharacter(
            labels,
            tuple(adj.get(x, 0) for x in labels),
            tuple(mnl.get(x, 0) for x in labels),
            None,
            row.possprim,
            row.nongcr,
        )
        out.append((row.number, fc))
    return out


# ---------------------------------------------------------------- commands


def cmd_roots(group_type: str) -> str:
    rs = build_root_system(group_type)
    out = [f"type {rs.type_label}", f"rank {rs.rank}"]
    out.append("cartan")
    out += ["  " + " ".join(f"{v:2d}" for v in row) for row in rs.cartan]
    out.append(f"positive roots {len(rs.positive_roots)}")
    out.append(f"weyl group order {rs.weyl_group_order}")
    out.append("highest root marks " + " ".join(map(str, rs.highest_root_marks)))
    out.append(f"determinant {rs.determinant}")
    if rs.type_label in EXCEPTIONAL:
        for which in MODULES:
            hw = module_high_weight(rs.type_label, which)
            out.append(f"{which} high weight {' '.join(map(str, hw))} dim {weyl_dim(rs, hw)}")
    return "\n".join(out) + "\n"


def cmd_torsion(group_type: str, m: int, module: str | None = None) -> str:
    rs = build_root_system(group_type)
    ws = module_weights(rs.type_label, module) if module else None
    out = []
    for c in enumerate_classes(rs.type_label, m):
        line = str(c)
        if ws is not None:
            line += f" trace({module})=" + cyc.render(trace(c, ws))
        out.append(line)
    return "\n".join(out) + ("\n" if out else "")


def _check_cap(t: BrauerTable, cap: int) -> None:
    top = max(c.order for c in t.classes)
    if top > cap:
        raise CliError(f"table {t.name} has classes of order {top} above --max-order {cap}")


def _solve_rows(cfg: RunConfig, t: BrauerTable) -> tuple[list[FeasibleCharacter], bool]:
    _check_cap(t, cfg.max_order)
    both = same_module(cfg.group_type) or set(cfg.modules) == set(MODULES)
    if both:
        levi = load_levi(cfg.group_type, t.name, t.p)
        return feasible_characters(t, cfg.group_type, cfg.max_order, levi), True
    rows = single_module_characters(t, cfg.group_type, cfg.modules[0], cfg.max_order)
    return rows, False


def cmd_solve(cfg: RunConfig) -> str:
    t = read_table(cfg.brauer_path)
    rows, flags = _solve_rows(cfg, t)
    render = render_table if cfg.fmt == "table" else render_lines
    return render(t, cfg.group_type, rows, cfg.modules, flags, cfg.verbose)


def cmd_verify(cfg: RunConfig, expected_path: Path) -> tuple[int, str]:
    t = read_table(cfg.brauer_path)
    try:
        text = expected_path.read_text()
    except OSError as exc:
        raise CliError(f"{expected_path}: {exc.strerror}") from None
    exp = parse_expected(text, str(expected_path))
    if (exp.name, exp.group_type, exp.p) != (t.name, cfg.group_type, t.p):
        raise CliError(
            f"{expected_path}: table is for {exp.name} < {exp.group_type}, p = {exp.p}, "
            f"not {t.name} < {cfg.group_type}, p = {t.p}"
        )
    got, _ = _solve_rows(RunConfig(cfg.group_type, cfg.brauer_path, MODULES, cfg.max_order), t)
    want = expected_characters(t, exp, str(expected_path))

    def key(fc: FeasibleCharacter):
        return canonical(t, fc).key

    got_by_key = {key(fc): fc for fc in got}
    diffs = []
    seen = set()
    missing = []
    for number, fc in want:
        k = key(fc)
        if k in seen:
            diffs.append(f"duplicate expected row {number} {_show(k)}")
            continue
        seen.add(k)
        mine = got_by_key.get(k)
        if mine is None:
            missing.append((number, k))
        elif (mine.possprim, mine.nongcr) != (fc.possprim, fc.nongcr):
            diffs.append(
                f"row {number} {_show(k)}: expected possprim {_flag(fc.possprim)} "
                f"nongcr {_flag(fc.nongcr)}, computed {_flag(mine.possprim)} {_flag(mine.nongcr)}"
            )
    extra = sorted(set(got_by_key) - seen)
    for number, k in missing:
        if extra:
            near = min(extra, key=lambda e: (_distance(k, e), e))
            extra.remove(near)
            diffs.append(f"row {number}: expected {_show(k)}, nearest computed {_show(near)}")
        else:
            diffs.append(f"row {number}: expected {_show(k)}, not computed")
    for k in extra:
        diffs.append(f"unexpected row {_show(k)}")
    if diffs:
        return 1, "\n".join(diffs) + f"\nFAIL {len(diffs)} difference(s)\n"
    return 0, f"OK {len(want)} rows match\n"


def _distance(a, b) -> int:
    return sum(abs(x - y) for u, v in zip(a, b) for x, y in zip(u, v))


def _show(key) -> str:
    return "L " + " ".join(map(str, key[0])) + " | V " + " ".join(map(str, key[1]))


# ---------------------------------------------------------------- entry point


def _group(text: str) -> str:
    label = text.strip().upper()
    if label not in EXCEPTIONAL:
        raise argparse.ArgumentTypeError(f"group must be one of {', '.join(EXCEPTIONAL)}")
    return label


def _root_type(text: str) -> str:
    try:
        return build_root_system(text).type_label
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _modules(text: str) -> tuple[str, ...]:
    items = tuple(x.strip() for x in text.split(",") if x.strip())
    if not items or any(x not in MODULES for x in items) or len(set(items)) != len(items):
        raise argparse.ArgumentTypeError("modules must be a comma list of adjoint, minimal")
    return tuple(x for x in MODULES if x in items)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="feasichar", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("roots", help="root system summary")
    r.add_argument("--group", required=True, type=_root_type)

    t = sub.add_parser("torsion", help="classes of elements of order m")
    t.add_argument("--group", required=True, type=_group)
    t.add_argument("--order", required=True, type=_positive)
    t.add_argument("--module", choices=MODULES)

    s = sub.add_parser("solve", help="feasible characters of a Brauer table")
    s.add_argument("--group", required=True, type=_group)
    s.add_argument("--brauer", required=True)
    s.add_argument("--modules", type=_modules, default=MODULES)
    s.add_argument("--max-order", type=_positive, default=DEFAULT_MAX_ORDER)
    s.add_argument("--format", choices=("table", "lines"), default="table")
    s.add_argument("-v", "--verbose", action="store_true", help="print a fusion witness per row")

    v = sub.add_parser("verify", help="compare solve output with an expected table")
    v.add_argument("--group", required=True, type=_group)
    v.add_argument("--brauer", required=True)
    v.add_argument("--expected", required=True)
    v.add_argument("--max-order", type=_positive, default=DEFAULT_MAX_ORDER)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "roots":
            sys.stdout.write(cmd_roots(args.group))
        elif args.command == "torsion":
            sys.stdout.write(cmd_torsion(args.group, args.order, args.module))
        elif args.command == "solve":
            cfg = RunConfig(
                args.group, resolve_table_path(args.brauer), args.modules, args.max_order, args.format, args.verbose
            )
            sys.stdout.write(cmd_solve(cfg))
        else:
            cfg = RunConfig(args.group, resolve_table_path(args.brauer), MODULES, args.max_order)
            expected = Path(args.expected)
            if not expected.exists():
                bundled = data_dir() / "expected" / expected.name
                for candidate in (bundled, bundled.with_name(bundled.name + ".tbl")):
                    if candidate.exists():
                        expected = candidate
                        break
            status, report = cmd_verify(cfg, expected)
            sys.stdout.write(report)
            return status
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
