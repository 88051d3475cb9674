import pytest
from hypothesis import given, strategies as st

from semibent import gf2field as gf
from semibent.errors import DlogOfZero, NonPrimitivePolynomial, UnsupportedDegree
from golden import PI_M5


def clmul_mod(a, b, poly, t):
    """Schoolbook product in F_2[z] reduced mod poly; independent of the log tables."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> t & 1:
            a ^= poly
    return acc


@pytest.mark.parametrize("t", range(2, 17))
def test_default_polys_are_primitive(t):
    fld = gf.make_field(t)
    assert fld.prim_poly == gf.DEFAULT_POLYS[t]
    assert len(set(fld.antilog_table[: fld.order])) == fld.order


@pytest.mark.parametrize("t", [2, 3, 4, 5, 8])
def test_log_antilog_inverse(t):
    fld = gf.make_field(t)
    for a in range(1, fld.size):
        assert gf.pow_gamma(fld, gf.dlog(fld, a)) == a


@given(st.integers(2, 10), st.data())
def test_mul_matches_schoolbook(t, data):
    fld = gf.make_field(t)
    a = data.draw(st.integers(0, fld.size - 1))
    b = data.draw(st.integers(0, fld.size - 1))
    assert gf.mul(fld, a, b) == clmul_mod(a, b, fld.prim_poly, t)


def test_parse_poly_forms():
    assert gf.parse_poly("x^3+x+1", 3) == 0xB
    assert gf.parse_poly("z^3+z+1", 3) == 0xB
    assert gf.parse_poly("0xB", 3) == 0xB
    assert gf.parse_poly("0b1011", 3) == 0xB
    assert gf.parse_poly(11, 3) == 0xB
    assert gf.parse_poly(None, 3) == 0xB
    assert gf.format_poly(0xB) == "x^3+x+1"


def test_pi_table_m5():
    fld = gf.make_field(3, "z^3+z+1")
    assert [gf.pi_str(fld, gf.pow_gamma(fld, i)) for i in range(7)] == PI_M5
    for i in range(7):
        a = gf.pow_gamma(fld, i)
        assert gf.pi_inv(fld, gf.pi(fld, a)) == a


def test_errors():
    with pytest.raises(NonPrimitivePolynomial):
        gf.make_field(4, "x^4+x^3+x^2+x+1")  # irreducible, order 5
    with pytest.raises(NonPrimitivePolynomial):
        gf.make_field(4, "x^4+x^2+1")  # reducible
    with pytest.raises(UnsupportedDegree):
        gf.make_field(1)
    with pytest.raises(UnsupportedDegree):
        gf.make_field(17)
    with pytest.raises(DlogOfZero):
        gf.dlog(gf.make_field(3), 0)
