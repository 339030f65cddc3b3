import pytest
from hypothesis import given
from hypothesis import strategies as st

from feasichar import cyclotomic as cyc
from feasichar.brauer import (
    BrauerFormatError,
    BrauerValidationError,
    load_table,
    parse_table,
    serialize_table,
    validate,
)
from feasichar.cyclotomic import CyclotomicNumber, root_of_unity

SMALL = """\
# Alt5, ordinary
group Alt5 p 0 exponent 30
class 1A order 1
class 2A order 2 pow 2:1A
class 3A order 3 pow 2:3A 3:1A
class 5A order 5 pow 2:5B 3:5B 5:1A
class 5B order 5 pow 2:5A 3:5A 5:1A
irr 1 deg 1 ind 1 dual 1 h1 0 vals 1;1;1;1;1
irr 3a deg 3 ind 1 dual 3a h1 0 vals 3;-1;0;-z5^2 - z5^3;1 + z5^2 + z5^3
irr 3b deg 3 ind 1 dual 3b h1 0 vals 3;-1;0;1 + z5^2 + z5^3;-z5^2 - z5^3
irr 4 deg 4 ind 1 dual 4 h1 0 vals 4;0;1;-1;-1
irr 5 deg 5 ind 1 dual 5 h1 0 vals 5;1;-1;0;0
out classes (5A,5B) irrs (3a,3b)
"""


def test_bundled_tables_round_trip_byte_for_byte(tables_dir):
    files = sorted(tables_dir.glob("*.bct"))
    assert len(files) >= 10
    for path in files:
        text = path.read_text()
        assert serialize_table(parse_table(text)) == text, path.name


def test_bundled_tables_validate(tables_dir):
    for path in sorted(tables_dir.glob("*.bct")):
        assert validate(load_table(path)) == [], path.name


def test_parse_small_table():
    t = parse_table(SMALL)
    assert t.name == "Alt5" and t.p == 0 and t.exponent == 30
    assert t.class_labels == ["1A", "2A", "3A", "5A", "5B"]
    assert t.value("3a", "5A") == cyc.parse("1 + z5 + z5^4")
    assert t.power(t.class_index["5A"], 4) == t.class_index["5A"]
    assert t.power(t.class_index["5A"], 2) == t.class_index["5B"]
    assert t.power_closed_family(t.class_index["5A"]) == [0, 3, 4]
    assert t.outer_actions[0].irr_perm == {"3a": "3b", "3b": "3a"}


def test_orthogonality_of_ordinary_table():
    t = parse_table(SMALL)
    sizes = [1, 15, 20, 12, 12]
    for x in t.irreducibles:
        for y in t.irreducibles:
            s = sum(n * complex(a) * complex(b).conjugate() for n, a, b in zip(sizes, x.values, y.values))
            assert abs(s - (60 if x is y else 0)) < 1e-9


def test_comments_and_blank_lines_survive():
    text = "# head\n\n" + SMALL.replace("irr 4 ", "# middle\nirr 4 ") + "# tail\n"
    assert serialize_table(parse_table(text)) == text


@pytest.mark.parametrize(
    "mutate, lineno",
    [
        (lambda s: s.replace("group Alt5 p 0 exponent 30", "group Alt5 p zero"), 2),
        (lambda s: s.replace("class 2A order 2", "class 2A orders 2"), 4),
        (lambda s: s.replace("vals 4;0;1;-1;-1", "vals 4;0;1;-1"), 11),
        (lambda s: s.replace("vals 5;1;-1;0;0", "vals 5;1;-1;0;q"), 12),
        (lambda s: s.replace("out classes", "outer classes"), 13),
    ],
)
def test_format_errors_carry_line_numbers(mutate, lineno):
    with pytest.raises(BrauerFormatError) as err:
        parse_table(mutate(SMALL))
    assert err.value.lineno == lineno
    assert f"line {lineno}" in str(err.value)


def test_ordering_of_directives_enforced():
    text = SMALL.replace("class 5B order 5 pow 2:5A 3:5A 5:1A\n", "") + "class 5B order 5\n"
    with pytest.raises(BrauerFormatError):
        parse_table(text)


@pytest.mark.parametrize(
    "old, new, check",
    [
        ("irr 4 deg 4", "irr 4 deg 5", "degree"),
        ("class 3A order 3 pow 2:3A 3:1A", "class 3A order 3 pow 2:3A 3:2A", "power-map"),
        ("irr 3b deg 3 ind 1 dual 3b", "irr 3b deg 3 ind 1 dual 3a", "dual"),
        ("vals 3;-1;0;1 + z5^2 + z5^3;-z5^2 - z5^3", "vals 3;-1;0;1 + z5^2 + z5^3;1 + z5^2 + z5^3", "galois"),
        ("exponent 30", "exponent 15", "exponent"),
        ("out classes (5A,5B) irrs (3a,3b)", "out classes (5A,5B) irrs (3a,4)", "outer"),
        ("irr 5 deg 5 ind 1 dual 5 h1 0", "irr 5 deg 5 ind 1 dual 5 h1 2", "h1"),
        ("irr 4 deg 4 ind 1", "irr 4 deg 4 ind 0", "indicator"),
    ],
)
def test_validation_names_the_failed_check(old, new, check):
    text = SMALL.replace(old, new)
    assert text != SMALL
    with pytest.raises(BrauerValidationError) as err:
        parse_table(text)
    assert check in {v.check for v in err.value.violations}


def test_p_regularity_checked():
    with pytest.raises(BrauerValidationError) as err:
        parse_table(SMALL.replace("p 0", "p 5"))
    assert "p-regular" in {v.check for v in err.value.violations}


def test_unknown_h1_is_kept():
    t = parse_table(SMALL.replace("irr 4 deg 4 ind 1 dual 4 h1 0", "irr 4 deg 4 ind 1 dual 4 h1 ?"))
    assert t.irr("4").h1 is None
    assert "h1 ?" in serialize_table(t)


@given(st.sampled_from(["1", "3a", "3b", "4", "5"]), st.integers(0, 4), st.integers(-3, 3))
def test_value_perturbation_detected_or_harmless(irr, cls, delta):
    t = parse_table(SMALL)
    x = t.irr(irr)
    if delta == 0 or cls == t.identity:
        return
    vals = list(x.values)
    vals[cls] = vals[cls] + delta
    line = f"vals {';'.join(cyc.render(v) for v in x.values)}"
    new = f"vals {';'.join(cyc.render(v) for v in vals)}"
    text = SMALL.replace(f"irr {irr} deg {x.degree} ind 1 dual {irr} h1 0 {line}", f"irr {irr} deg {x.degree} ind 1 dual {irr} h1 0 {new}")
    mutated = parse_table(text, check=False)
    # the 5-classes are Galois conjugate, the outer action carries values
    if t.classes[cls].order == 5 or irr in ("3a", "3b"):
        assert validate(mutated)


# Alt17 in characteristic 2: exact values from closed formulas.

CYCLES = {
    "1A": [], "3A": [3], "3B": [3, 3], "3C": [3] * 3, "3D": [3] * 4, "3E": [3] * 5,
    "5A": [5], "5B": [5, 5], "5C": [5] * 3, "7A": [7], "7B": [7, 7], "11A": [11], "13A": [13],
}


def half_spin(cycles):
    fixed = 17 - sum(cycles)
    ones = fixed + len(cycles) - 1
    total = CyclotomicNumber.from_int(2 ** (ones // 2))
    for n in cycles:
        for k in range(1, (n - 1) // 2 + 1):
            e = k * (n + 1) // 2
            total = total * (root_of_unity(n, e) + root_of_unity(n, -e))
    return int(total) // 2


def test_alt17_values_match_closed_formulas(tables_dir):
    t = load_table(tables_dir / "a17_p2.bct")
    assert t.exponent == 765765
    for label, cycles in CYCLES.items():
        chi16 = 17 - sum(cycles) - 1
        assert t.value("16", label) == chi16
        assert t.value("118", label) == (chi16 * chi16 - chi16) // 2 - 2
        assert t.value("128a", label) == half_spin(cycles)
        assert t.value("128b", label) == half_spin(cycles)
    assert [x.h1 for x in t.irreducibles] == [0, 0, 2, 0, 0]
