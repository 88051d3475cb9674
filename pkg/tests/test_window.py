import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semibent import boolfun as bf
from semibent.constructions import construction1, construction2
from semibent.errors import BadOrder
from semibent.window import (
    analyze_family_depth, restriction, semibent_depth, theta_min, window_correlation_profile,
)


@st.composite
def functions(draw, lo=2, hi=8):
    m = draw(st.integers(lo, hi))
    seed = draw(st.integers(0, 2**32 - 1))
    tt = np.random.default_rng(seed).integers(0, 2, 1 << m, dtype=np.uint8)
    return bf.BooleanFunction(m, tt)


@settings(max_examples=40)
@given(functions(), st.data())
def test_restriction_is_contiguous_block(f, data):
    s = data.draw(st.integers(0, f.m - 1))
    p = data.draw(st.integers(0, (1 << s) - 1))
    r = restriction(f, s, p)
    width = 1 << (f.m - s)
    assert r.m == f.m - s
    assert np.array_equal(bf.sequence_of(r), bf.sequence_of(f)[p * width:(p + 1) * width])
    for x in range(width):
        assert r(x) == f((p << (f.m - s)) | x)


def test_restriction_identity_and_errors():
    f = bf.from_anf(4, "x1x2+x3x4")
    assert restriction(f, 0, 0) == f
    with pytest.raises(BadOrder):
        restriction(f, 4, 0)
    with pytest.raises(BadOrder):
        restriction(f, 2, "101")


@settings(max_examples=25, deadline=None)
@given(functions(3, 8))
def test_depth_matches_direct_classification(f):
    rep = semibent_depth(f)
    for o in rep.orders:
        ok = sum(bf.is_semibent(restriction(f, o.order, p)) for p in range(1 << o.order))
        assert ok == o.semibent
    # monotone: every order up to depth is fully semi-bent
    assert all(o.all_semibent for o in rep.orders[:rep.depth + 1])
    assert (rep.depth >= 0) == bf.is_semibent(f)


def test_linear_has_no_depth():
    rep = semibent_depth(bf.linear(5, 0b10101))
    assert rep.depth == -1 and rep.first_failure["order"] == 0


@pytest.mark.parametrize("m", [4, 5, 6, 7, 8])
def test_construction1_depth(m):
    # a restriction of order r keeps peak 2^t, which is semi-bent only while
    # floor((m - r + 2)/2) == t: r = 0 always, r = 1 only for odd m
    F, fam = construction1(m)
    expect = 1 if m % 2 else 0
    for c in range(1, 1 << fam.c_len):
        assert semibent_depth(F.combine(c)).depth == expect


def test_construction1_fixed_y_is_linear():
    F, _ = construction1(5)
    # y fully fixed leaves a linear function of x
    r = restriction(F.combine(1), 2, "01")
    assert bf.classify(r).kind is bf.Kind.PLATEAUED and r.weight in (0, 4)


def test_construction2_endpoints():
    _, g = construction2(construction1(3)[1], 4)
    prof = analyze_family_depth(g)
    assert prof.functions == 3 * 4 * 32
    assert prof.semibent_at(0) and prof.semibent_at(4)
    assert prof.failing_orders  # some intermediate window loses the property
    assert all(0 < o < 7 for o in prof.failing_orders)
    assert "FAIL" in prof.to_table()


def test_window_profiles():
    bent = bf.from_anf(6, "x1x2+x3x4+x5x6")
    p = window_correlation_profile(bent, 6)
    assert p.block_max == [8] and p.meets_target and not p.target_is_surrogate
    lin = window_correlation_profile(bf.linear(6, 3), 6)
    assert lin.block_max == [64] and not lin.meets_target
    G, _ = construction2(construction1(3)[1], 4)
    w = window_correlation_profile(G.combine(1), 3)
    assert w.block_max == [4] * 16 and w.target == 4 and w.target_is_surrogate
    with pytest.raises(BadOrder):
        window_correlation_profile(bent, 1)
    assert [theta_min(v) for v in (2, 3, 4, 5)] == [2, 4, 4, 8]


def test_report_exports():
    rep = semibent_depth(bf.from_anf(5, "x1x2+x3x4+x5"))
    d = rep.to_dict()
    assert d["depth"] == rep.depth and len(d["orders"]) == 5
    assert '"depth"' in rep.to_json()
    assert rep.to_table().startswith("function f")
