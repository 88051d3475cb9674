"""The ten acceptance criteria, one test each; a summary line per criterion is printed at the end."""

import numpy as np
import pytest

from semibent import boolfun as bf
from semibent import gf2field as gf
from semibent.constructions import (
    construction1, construction2, construction3, hadamard_partition, index_ic, semibent_audit,
    vectorial_bent,
)
from semibent.hexassign import (
    builtin_family, builtin_layout, c3_layout, sequences_per_cell, verify,
)
from semibent.ortho import (
    closed_form_orthogonal, correlation_matrix, count_decomposition, count_orthogonal,
    ortho_table, orthogonality_matrix, sets_orthogonal_bruteforce,
)
from semibent.window import analyze_family_depth
from golden import (
    FC_M5, IC_M5, PI_M5, CYCLIC_ORDER_2, CYCLIC_ORDER_3, PARTITION_M5, ORTHO_M5, ORTHO_M3,
    ORTHO_M6,
)


@pytest.mark.criterion(1, "m=5 worked example: pi table, i_c table, f_c strings, Hadamard partition")
def test_c01_worked_example():
    F, fam = construction1(5, 2, 3, "z^3+z+1")
    fld = fam.field
    assert [gf.pi_str(fld, gf.pow_gamma(fld, i)) for i in range(7)] == PI_M5
    assert {c: index_ic(fld, c) for c in IC_M5} == IC_M5
    for c, text in FC_M5.items():
        assert bf.format_sequence(bf.sequence_of(F.combine(c))) == text
    parts = hadamard_partition(5, 2, 3)
    lines = []
    for a in CYCLIC_ORDER_3:
        lines.append(f"H_{a}")
        lines += [bf.format_sequence(r) for r in parts[a].sequences]
    assert "\n".join(lines) + "\n" == PARTITION_M5


def _table_matches(family, rows, golden):
    t = ortho_table(family, "cyclic")
    assert t.rows == rows
    return all({a for a in t.cols if t[c, a]} == golden[c] for c in rows)


@pytest.mark.criterion(2, "orthogonality tables for m=5, m=3 and m=6 cell for cell")
def test_c02_tables():
    assert _table_matches(construction1(5, 2, 3, "x^3+x+1")[1], CYCLIC_ORDER_3, ORTHO_M5)
    assert _table_matches(construction1(3, 1, 2)[1], CYCLIC_ORDER_2, ORTHO_M3)
    assert _table_matches(construction3(6, 2)[1], ["00", "01", "10", "11"], ORTHO_M6)


@pytest.mark.criterion(3, "orthogonal-set count: 35 (7+7+21) for m=5, 9 for m=3, every set")
def test_c03_counts():
    f5 = construction1(5)[1]
    for e in range(8):
        for d in range(8):
            assert count_orthogonal(f5, e, d) == 35
            assert count_decomposition(f5, e, d) == {"same_c": 7, "same_alpha": 7, "rest": 21}
    f3 = construction1(3)[1]
    assert all(count_orthogonal(f3, e, d) == 2 ** 3 + 2 ** 1 - 1 for e in range(4) for d in range(4))


@pytest.mark.criterion(4, "closed-form tests agree with exhaustive inner products (64^2 + 16^2 + 16^2 pairs)")
def test_c04_closed_form_equivalence():
    total = 0
    for fam in (construction1(5)[1], construction1(3)[1], construction3(6, 2)[1]):
        ids = fam.ids()
        for a in ids:
            for b in ids:
                brute = sets_orthogonal_bruteforce(fam.get(a), fam.get(b))
                if a == b:
                    assert brute.orthogonal  # rows inside a set are mutually orthogonal
                else:
                    assert closed_form_orthogonal(fam, a, b) == brute.orthogonal
                total += 1
    assert total == 64 ** 2 + 16 ** 2 + 16 ** 2


@pytest.mark.criterion(5, "spectral audits: semi-bent f_c, bent combinations of the vectorial bent map, Parseval")
def test_c05_spectral_audits():
    for fam in [construction1(m)[1] for m in (3, 5, 7)] + [construction3(m)[1] for m in (6, 8)]:
        audit = semibent_audit(fam)
        assert audit["all_semibent"] and audit["parseval"]
        for c in range(1, 1 << fam.c_len):
            mags = set(np.abs(bf.walsh_spectrum(fam.combination(c))).tolist())
            assert mags == {0, 1 << ((fam.n + 2) // 2)}
    for u, t in [(4, 2), (6, 3), (8, 3)]:
        H = vectorial_bent(u, t)
        for c in range(1, 1 << t):
            spec = bf.walsh_spectrum(H.combine(c))
            assert bf.parseval_holds(spec)
            assert set(np.abs(spec).tolist()) == {1 << (u // 2)}


@pytest.mark.criterion(6, "bent extension (m=3, u=4): 16 x 32 x 128, base pattern kept, non-orthogonal max 16")
def test_c06_construction2():
    base = construction1(3)[1]
    _, g = construction2(base, 4)
    assert (g.n_sets, g.set_size, g.length) == (16, 32, 128)
    orth = orthogonality_matrix(g, "brute_force")
    assert np.array_equal(orth, orthogonality_matrix(base, "brute_force"))
    corr = correlation_matrix(g)
    off = ~orth & ~np.eye(16, dtype=bool)
    assert corr[off].max() == 2 ** (4 // 2) * 2 ** base.params["t"] == 16
    assert np.all(corr[orth] == 0)


@pytest.mark.criterion(7, "builtin layouts m3_D4, m5_D8, m6_D4 pass verification")
def test_c07_layouts():
    for name, D, m in (("m3_D4", 4, 3), ("m5_D8", 8, 5), ("m6_D4", 4, 6)):
        rep = verify(builtin_layout(name), builtin_family(name))
        assert rep.adjacent_violations == []
        assert rep.measured_min_reuse_distance >= D
        assert rep.max_nonadjacent_correlation == 2 ** ((m + 2) // 2)
        assert rep.passes


@pytest.mark.criterion(8, "per-cell parameters at D=4: N = 2^(m-2), #sets 16 (odd m) or 2^(m/2+1) (even m)")
def test_c08_cell_parameters():
    lay3 = builtin_layout("m3_D4")
    f3 = builtin_family("m3_D4")
    cases = [(3, lay3, f3, 16)]
    _, g7 = construction2(f3, 4)
    cases.append((7, lay3.rebind(g7), g7, 16))
    cases.append((6, builtin_layout("m6_D4"), builtin_family("m6_D4"), 16))
    f8 = construction3(8, 2)[1]
    cases.append((8, c3_layout(f8), f8, 2 ** (8 // 2 + 1)))
    for m, lay, fam, n_sets in cases:
        assert fam.n == m
        assert set(sequences_per_cell(lay, fam).values()) == {2 ** (m - 2)}
        assert len(lay.set_ids()) == n_sets
        rep = verify(lay, fam)
        assert rep.passes and lay.claimed_D == 4 and rep.measured_min_reuse_distance >= 4


@pytest.mark.criterion(9, "window endpoints for (m,u)=(3,4): order 0 and order u semi-bent; intermediate failure reported")
def test_c09_window_endpoints():
    _, g = construction2(construction1(3)[1], 4)
    prof = analyze_family_depth(g)
    assert prof.functions == 3 * 128  # every g_c + l' with c != 0
    assert prof.semibent_at(0)
    assert prof.semibent_at(4)
    inner = [o for o in prof.failing_orders if 0 < o < 4]
    assert inner, "no intermediate failure found"
    print(f"intermediate orders with non-semi-bent windows: {inner}")


@pytest.mark.criterion(10, "fast transform equals the definition for 100 seeded functions at each m = 4..10")
def test_c10_fast_transform():
    rng = np.random.default_rng(20240101)
    for m in range(4, 11):
        for _ in range(100):
            f = bf.BooleanFunction(m, rng.integers(0, 2, 1 << m, dtype=np.uint8))
            fast = bf.walsh_spectrum(f)
            naive = [bf.walsh_at(f, w) for w in range(1 << m)]
            assert fast.tolist() == naive
