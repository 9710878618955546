import pytest

from oracles import ci_count, h_line_oracle

from tango_workbench.bundles import quotient_middle, tango_middle
from tango_workbench.chase import Engine
from tango_workbench.combinatorics import Exact
from tango_workbench.deformation import (FAIL, INDETERMINATE, PASS, DeformationReport,
                                         deformation_tables, equal_status, kuranishi_dimension,
                                         le_status, ext1_vanishing, quot_dimension,
                                         sigma_dimension, smoothness_report)
from tango_workbench.params import TangoParams

CLASSICAL = TangoParams(3, 1, 0, 0)
WEIGHTED = TangoParams(3, 7, 1, 0)


def test_status_helpers():
    assert equal_status(Exact(3), Exact(3)) == PASS
    assert equal_status(Exact(3), (4, 9)) == FAIL
    assert equal_status((1, 5), Exact(3)) == INDETERMINATE
    assert le_status((1, 2), (2, 5)) == PASS
    assert le_status((6, 7), (2, 5)) == FAIL
    assert le_status((1, 7), (2, 5)) == INDETERMINATE


@pytest.mark.parametrize("n", [3, 4, 5])
def test_classical_all_identities_hold(n):
    p = TangoParams(n, 1, 0, 0)
    rep = smoothness_report(p)
    assert rep.all_exact
    assert all(status == PASS for _, status in rep.identities), rep.identities
    assert rep.h0_end_Q == Exact(1) and rep.h1_end_Q == Exact(0)


def test_classical_n3_values():
    rep = smoothness_report(CLASSICAL)
    # T is O^5, so End T has 25 sections and Q*(1) (x) T has 5 h0(Q*(1)) = 5 * 6
    assert rep.h0_end_T == Exact(25)
    assert rep.h0_QdualTensor == Exact(30)
    assert rep.dim_Y == Exact(30 + 0 - 1)
    assert rep.dim_Sigma == Exact(0)
    assert rep.dim_Z == Exact(25 - 0 - 1)
    assert rep.kuranishi_dim == Exact(5) == Exact(29 - 24)


def test_classical_sigma_from_global_sections():
    # H0 of 0 -> F*(-1) (x) T -> End T -> Q*(1) (x) T -> 0 with End T = 25 and the
    # right term 30-dimensional: the left term has no sections
    assert sigma_dimension(CLASSICAL) == Exact(0)


def test_ext1_vanishing_everywhere_small():
    for n in (3, 4, 5):
        for p in (TangoParams(n, 1, 0, 0), TangoParams(n, n + 2, 1, -1), TangoParams(n, 4, 1, 1)):
            assert ext1_vanishing(p)


def test_weighted_golden_values():
    # engine-derived regression values at (3, 7, 1, 0)
    rep = smoothness_report(WEIGHTED)
    hf = sum(ci_count(WEIGHTED.form_degrees(), 7 + d) for d in quotient_middle(WEIGHTED))
    assert rep.h1_end_Q == Exact(hf) == Exact(735)
    assert rep.h0_end_Q == Exact(1)
    assert rep.h0_QdualTensor == Exact(141)
    assert rep.dim_Y == Exact(875) == quot_dimension(WEIGHTED)
    assert rep.dim_Sigma == Exact(0)
    assert rep.h0_end_T == Exact(sum(h_line_oracle(3, a - b, 0)
                                     for a in tango_middle(WEIGHTED)
                                     for b in tango_middle(WEIGHTED))) == Exact(126)
    assert rep.dim_Z == Exact(125)
    assert rep.h1_FdualTensor == Exact(15)


def test_weighted_flank_does_not_vanish():
    # h2(Q(-7) (x) T*) = sum_k h2(Q(-7 - e_k)) = sum_k HF_R(7 + e_k + 7 - 4)
    rep = smoothness_report(WEIGHTED)
    expected = sum(ci_count(WEIGHTED.form_degrees(), 10 + e) for e in tango_middle(WEIGHTED))
    assert rep.flank_h2 == Exact(expected) == Exact(1771)
    assert rep.flank_h1 == Exact(0)
    st = rep.status
    assert st["flank: h2(Q(-g) x T*) = 0"] == FAIL
    assert st["h1(End Q) = h2(F*(-2g) x Q)"] == FAIL
    assert rep.h2_FdualQ.lo > rep.h1_end_Q.hi


def test_weighted_kuranishi_is_an_interval_containing_y_minus_z():
    k = kuranishi_dimension(WEIGHTED)
    assert not k.is_exact
    assert 875 - 125 in k
    assert smoothness_report(WEIGHTED).status["dim Kur = dim_Y - dim_Z"] == INDETERMINATE


def test_end_q_sequence_route_is_sound():
    tabs = deformation_tables(WEIGHTED, Engine(WEIGHTED))
    direct, seq = tabs["direct"]["End Q"], tabs["route_sequence"]["End Q"]
    for a, b in zip(direct.dims, seq.dims):
        assert a.meet(b) == a


def test_report_json_round_trip():
    for p in (CLASSICAL, WEIGHTED):
        rep = smoothness_report(p)
        assert DeformationReport.from_json(rep.to_json()) == rep
