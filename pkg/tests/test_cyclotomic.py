from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from feasichar import cyclotomic as cyc
from feasichar.cyclotomic import CyclotomicNumber, euler_phi, root_of_unity


def test_cyclotomic_polynomials():
    assert cyc.cyclotomic_polynomial(1) == (-1, 1)
    assert cyc.cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyc.cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyc.cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for n in range(1, 40):
        assert len(cyc.cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_sum_of_primitive_roots_is_mobius():
    assert sum((root_of_unity(5, k) for k in range(1, 5)), CyclotomicNumber.from_int(0)) == -1
    assert sum((root_of_unity(9, k) for k in (1, 2, 4, 5, 7, 8)), CyclotomicNumber.from_int(0)) == 0


def test_conductor_is_minimal():
    z12 = root_of_unity(12)
    assert (z12**4).conductor == 3
    assert (z12**3).conductor == 4
    assert (z12**6) == -1
    assert (root_of_unity(10) ** 2).conductor == 5
    assert root_of_unity(10).conductor == 5  # z10 = -z5^3


def test_golden_ratio_values():
    b5 = cyc.parse("-z5^2 - z5^3")
    assert abs(complex(b5) - (1 + 5**0.5) / 2) < 1e-12
    assert b5 * b5 == b5 + 1


@pytest.mark.parametrize("text", ["0", "1", "-3", "1 + z3", "z8 - z8^3", "-1 - z5^2 - z5^3", "2*z7 - 3*z7^4"])
def test_render_parse_round_trip(text):
    assert cyc.render(cyc.parse(text)) == text


@pytest.mark.parametrize("bad", ["", "1 +", "z", "2**z3", "x5"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        cyc.parse(bad)


def test_galois_rejects_non_units():
    with pytest.raises(ValueError):
        cyc.galois(root_of_unity(4), 2)


def elements(max_n=12):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(-5, 5), min_size=n, max_size=n).map(lambda c: CyclotomicNumber(n, c))
    )


@given(elements(), elements())
def test_ring_operations_match_complex(a, b):
    for x, z in ((a + b, complex(a) + complex(b)), (a * b, complex(a) * complex(b)), (a - b, complex(a) - complex(b))):
        assert abs(complex(x) - z) < 1e-8


@given(elements())
def test_norm_is_integer_and_matches_complex_product(x):
    n = cyc.norm(x)
    assert isinstance(n, int)
    prod = 1
    for k in range(1, x.conductor + 1):
        if gcd(k, x.conductor) == 1:
            prod *= complex(cyc.galois(x, k))
    assert abs(prod - n) < 1e-6 * max(1, abs(n))


@given(elements())
def test_render_parse_identity(x):
    assert cyc.parse(cyc.render(x)) == x


@given(elements(), st.integers(1, 60))
def test_galois_is_ring_automorphism(x, k):
    n = x.conductor
    if gcd(k, n) != 1:
        return
    y = x * x + 3
    assert cyc.galois(y, k) == cyc.galois(x, k) * cyc.galois(x, k) + 3


@given(elements())
def test_equal_values_hash_equal(x):
    n = x.conductor
    y = CyclotomicNumber(6 * n, cyc.lift_coeffs(x.coeffs, n, 6 * n))
    assert x == y and hash(x) == hash(y)
