import itertools

import pytest
from hypothesis import given, strategies as st

from camoca.errors import CamocaError, FieldMismatchError, InfeasibleError
from camoca.gf import (
    FieldSpec,
    Polynomial,
    enumerate_irreducibles,
    field_check,
    field_from_order,
    field_make,
    field_ops,
    irreducible_count,
    is_irreducible,
    mobius,
    poly_arith,
    poly_gcd,
)

from oracles import divides, irreducibles_by_products, long_division_gf2, mask_to_poly, poly_to_mask

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4)]


def P(field, s):
    return Polynomial.from_string(field, s)


def test_prime_fields():
    assert list(field_make(2).elements()) == [0, 1]
    assert list(field_make(3).elements()) == [0, 1, 2]
    assert field_make(3).modulus is None


def test_gf4_modulus(f4):
    assert f4.q == 4
    assert f4.modulus.coeffs == (1, 1, 1)
    assert [p.coeffs for p in enumerate_irreducibles(field_make(2), 2)] == [(1, 1, 1)]


@pytest.mark.parametrize("p, m", [(4, 1), (1, 1), (2, 0), (2, -1), (2, 9), (17, 2)])
def test_field_make_errors(p, m):
    with pytest.raises(CamocaError):
        field_make(p, m)


def test_field_bound_configurable():
    with pytest.raises(InfeasibleError):
        field_make(2, 5, max_order=16)
    assert field_make(2, 8).q == 256


def test_field_from_order():
    assert field_from_order(9) == field_make(3, 2)
    with pytest.raises(CamocaError):
        field_from_order(6)


def test_field_check_rejects_reducible_modulus():
    base = FieldSpec(2)
    with pytest.raises(CamocaError):
        field_check(FieldSpec(2, 2, Polynomial(base, (1, 0, 1))))
    field_check(field_make(2, 3))


def test_field_ops_examples(f2, f3, f4):
    assert field_ops(f2, 1, 1, "add") == 0
    assert field_ops(f3, 2, which="inv") == 2
    # t * t = t + 1 mod X^2 + X + 1
    assert field_ops(f4, 2, 2, "mul") == 3
    assert field_ops(f3, 1, which="neg") == 2
    assert field_ops(f3, 0, 1, "sub") == 2
    with pytest.raises(ZeroDivisionError):
        field_ops(f3, 0, which="inv")
    with pytest.raises(CamocaError):
        field_ops(f3, 3, 1, "add")


@pytest.mark.parametrize("p, m", FIELDS)
def test_inverse_exhaustive(p, m):
    f = field_make(p, m)
    for a in range(1, f.q):
        assert f.mul(f.inv(a), a) == 1


@pytest.mark.parametrize("p, m", [(2, 3), (3, 2), (5, 1)])
def test_field_axioms_exhaustive(p, m):
    f = field_make(p, m)
    els = list(f.elements())
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sub(f.add(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_extension_encoding_is_base_p_digits():
    f9 = field_make(3, 2)
    # modulus is the least irreducible: X^2 + 1 over GF(3)
    assert f9.modulus.coeffs == (1, 0, 1)
    t = 3
    assert f9.mul(t, t) == 2  # t^2 = -1
    assert f9.add(4, 5) == 6  # (1+t) + (2+t) = 0 + 2t


def test_poly_examples(f2):
    assert P(f2, "11") * P(f2, "11") == P(f2, "101")
    assert divmod(P(f2, "101"), P(f2, "11")) == (P(f2, "11"), Polynomial(f2))
    assert poly_arith(P(f2, "111"), P(f2, "11"), "divmod") == (P(f2, "01"), P(f2, "1"))
    assert poly_arith(P(f2, "11"), P(f2, "01"), "add") == P(f2, "1")


def test_poly_canonical_form(f2):
    assert Polynomial(f2, (1, 0, 0)).coeffs == (1,)
    assert Polynomial(f2, (0, 0)).degree is None
    assert Polynomial(f2).is_zero()
    assert str(P(f2, "101")) == "101"
    assert repr(P(f2, "1011")) == "1+X^2+X^3"


def test_poly_errors(f2, f3):
    with pytest.raises(ZeroDivisionError):
        divmod(P(f2, "1"), Polynomial(f2))
    with pytest.raises(FieldMismatchError):
        P(f2, "1") + P(f3, "1")
    with pytest.raises(CamocaError):
        Polynomial(f2, (2,))


def test_gcd_examples(f2):
    assert poly_gcd(P(f2, "101"), P(f2, "111")) == P(f2, "1")
    assert poly_gcd(P(f2, "101"), P(f2, "101")) == P(f2, "101")
    assert poly_gcd(P(f2, "101"), P(f2, "11")) == P(f2, "11")
    assert poly_gcd(P(f2, "011"), Polynomial(f2)) == P(f2, "011")
    with pytest.raises(CamocaError):
        poly_gcd(Polynomial(f2), Polynomial(f2))


def test_gcd_is_monic(f3):
    g = poly_gcd(P(f3, "22"), P(f3, "0"))
    assert g == P(f3, "11")


def _binary_polys(max_deg):
    f2 = field_make(2)
    return [mask_to_poly(f2, m) for m in range(1, 1 << (max_deg + 1))]


def test_divmod_matches_bitmask_long_division(f2):
    polys = _binary_polys(4)
    for a in polys:
        for b in polys:
            q, r = divmod(a, b)
            qm, rm = long_division_gf2(poly_to_mask(a), poly_to_mask(b))
            assert (poly_to_mask(q), poly_to_mask(r)) == (qm, rm)


def test_euclid_exhaustive_gf2(f2):
    polys = _binary_polys(4)
    for a in polys:
        for b in polys:
            g = poly_gcd(a, b)
            assert (a % g).is_zero() and (b % g).is_zero()
            top = min(a.degree, b.degree)
            for c in polys:
                if c.degree <= top and divides(f2, c, a) and divides(f2, c, b):
                    assert divides(f2, c, g)


@given(st.lists(st.integers(0, 2), max_size=6), st.lists(st.integers(0, 2), min_size=1, max_size=5))
def test_divmod_reconstructs(a, b):
    f3 = field_make(3)
    A, B = Polynomial(f3, a), Polynomial(f3, b)
    if B.is_zero():
        return
    q, r = divmod(A, B)
    assert q * B + r == A
    assert r.is_zero() or r.degree < B.degree


def test_mobius_examples():
    assert mobius(1) == 1
    assert mobius(2) == -1
    assert mobius(12) == 0
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    with pytest.raises(CamocaError):
        mobius(0)


def test_irreducible_count_examples(f2):
    assert irreducible_count(f2, 1) == 2
    assert irreducible_count(f2, 2) == 1
    assert irreducible_count(f2, 3) == 2
    with pytest.raises(CamocaError):
        irreducible_count(f2, 0)


def test_enumerate_examples(f2, f3):
    assert [p.coeffs for p in enumerate_irreducibles(f2, 1)] == [(0, 1), (1, 1)]
    assert [p.coeffs for p in enumerate_irreducibles(f3, 1)] == [(0, 1), (1, 1), (2, 1)]
    assert [p.coeffs for p in enumerate_irreducibles(f2, 2)] == [(1, 1, 1)]
    assert [p.coeffs for p in enumerate_irreducibles(f2, 3)] == [(1, 0, 1, 1), (1, 1, 0, 1)]
    with pytest.raises(InfeasibleError):
        enumerate_irreducibles(f2, 30)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_count_matches_enumeration(q, r):
    field = field_make(q)
    listed = enumerate_irreducibles(field, r)
    assert irreducible_count(field, r) == len(listed)
    if q**r <= 243:
        assert [p.coeffs for p in listed] == [p.coeffs for p in irreducibles_by_products(field, r)]


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_degree_sum_identity(q, n):
    field = field_make(q)
    assert sum(r * irreducible_count(field, r) for r in range(1, n + 1) if n % r == 0) == q**n


def test_is_irreducible(f2):
    assert is_irreducible(P(f2, "111"))
    assert not is_irreducible(P(f2, "101"))
    assert not is_irreducible(P(f2, "1"))
