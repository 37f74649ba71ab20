"""The exact LP layer: statuses, certificates, L1 minimization, branch and
bound, and a float-solver cross-check on random instances."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptflab import (
    LpBudgetError,
    LpError,
    LpProblem,
    check_farkas,
    check_l1_bound,
    check_witness,
    ilp_min,
    make_gt,
    min_l1,
    problem_from_text,
    problem_to_text,
    solve,
)
from ptflab.threshold_analysis import build_representation_problem


def FR(x, y=None):
    return Fraction(x) if y is None else Fraction(x, y)


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def test_contradictory_bounds_infeasible():
    pr = LpProblem(1)
    pr.add({0: 1}, ">=", 1)
    pr.add({0: 1}, "<=", 0)
    out = solve(pr)
    assert out.status == "infeasible"
    assert out.farkas == [FR(1), FR(1)]
    assert check_farkas(pr, out.farkas)


def test_minimize_simple_bound():
    pr = LpProblem(1, objective={0: FR(1)})
    pr.add({0: 1}, ">=", FR(3, 2))
    out = solve(pr)
    assert out.status == "optimal"
    assert out.value == FR(3, 2)
    assert out.witness == [FR(3, 2)]


def test_feasibility_with_witness_for_comparator():
    f = make_gt(2)
    prob = build_representation_problem(f, 1).problem
    out = solve(prob)
    assert out.status == "feasible"
    assert check_witness(prob, out.witness)


def test_objective_with_equalities():
    pr = LpProblem(2, objective={0: FR(1), 1: FR(1)})
    pr.add({0: 1, 1: 1}, "=", 3)
    pr.add({0: 1, 1: -1}, "=", 1)
    out = solve(pr)
    assert out.status == "optimal"
    assert out.witness == [FR(2), FR(1)]
    assert out.value == FR(3)


def test_unbounded_detected():
    pr = LpProblem(1, objective={0: FR(-1)}, nonneg=[True])
    pr.add({0: 1}, ">=", 0)
    out = solve(pr)
    assert out.status == "unbounded"


def test_nonneg_feasibility_paths():
    pr = LpProblem(1, nonneg=[True])
    pr.add({0: 1}, "<=", -1)
    out = solve(pr)
    assert out.status == "infeasible"
    assert check_farkas(pr, out.farkas)
    pr2 = LpProblem(1, nonneg=[True])
    pr2.add({0: 1}, ">=", 3)
    out2 = solve(pr2)
    assert out2.status == "feasible"
    assert out2.witness[0] >= 3


def test_pivot_budget_reported():
    f = make_gt(3)
    prob = build_representation_problem(f, 1).problem
    with pytest.raises(LpBudgetError):
        solve(prob, max_pivots=2)


def test_bad_rows_rejected():
    pr = LpProblem(2)
    with pytest.raises(LpError):
        pr.add({5: 1}, ">=", 0)
    with pytest.raises(LpError):
        pr.add({0: 1}, "!=", 0)


# ---------------------------------------------------------------------------
# min_l1
# ---------------------------------------------------------------------------


def test_l1_single_bound():
    pr = LpProblem(1)
    pr.add({0: 1}, ">=", 5)
    out = min_l1(pr)
    assert out.status == "optimal"
    assert out.value == FR(5)
    assert out.witness == [FR(5)]
    assert check_l1_bound(pr, out.dual, out.value)


def test_l1_ball_geometry():
    pr = LpProblem(2)
    pr.add({0: 1, 1: 1}, ">=", 2)
    pr.add({0: 1, 1: -1}, ">=", 2)
    out = min_l1(pr)
    assert out.value == FR(2)
    assert out.witness == [FR(2), FR(0)]


def test_l1_with_equality_rows():
    pr = LpProblem(2)
    pr.add({0: 1, 1: 1}, "=", 3)
    pr.add({0: 1, 1: -1}, "=", 1)
    out = min_l1(pr)
    assert out.value == FR(3)
    assert out.witness == [FR(2), FR(1)]
    assert check_l1_bound(pr, out.dual, out.value)


def test_l1_infeasible_certificate():
    pr = LpProblem(2)
    pr.add({0: 1}, ">=", 1)
    pr.add({0: 1}, "<=", -1)
    out = min_l1(pr)
    assert out.status == "infeasible"
    assert check_farkas(pr, out.farkas)


def test_l1_rejects_objective_or_nonneg():
    pr = LpProblem(1, objective={0: FR(1)})
    with pytest.raises(LpError):
        min_l1(pr)
    pr2 = LpProblem(1, nonneg=[True])
    with pytest.raises(LpError):
        min_l1(pr2)


# ---------------------------------------------------------------------------
# branch and bound
# ---------------------------------------------------------------------------


def test_ilp_returns_integral_relaxation():
    pr = LpProblem(2)
    pr.add({0: 1, 1: 1}, ">=", 2)
    pr.add({0: 1, 1: -1}, ">=", 2)
    res = ilp_min(pr)
    assert res.status == "optimal"
    assert res.value == 2
    assert res.witness == [2, 0]
    assert res.nodes == 1


def test_ilp_rounds_up_single_bound():
    pr = LpProblem(1)
    pr.add({0: 1}, ">=", FR(3, 2))
    res = ilp_min(pr)
    assert res.status == "optimal"
    assert res.value == 2
    assert res.witness == [2]


def test_ilp_infeasible():
    pr = LpProblem(1)
    pr.add({0: 1}, ">=", 1)
    pr.add({0: 1}, "<=", 0)
    res = ilp_min(pr)
    assert res.status == "infeasible"


def brute_force_min_weight(f, degree, radius):
    """Search integer gates over a coefficient box, pruning by weight."""
    monos = [m for d in range(degree + 1) for m in itertools.combinations(range(f.n), d)]
    inputs = [tuple((i >> j) & 1 for j in range(f.n)) for i in range(f.size)]
    bits = [f.bit(i) for i in range(f.size)]

    def value(c, a):
        tot = 0
        for coeff, m in zip(c, monos):
            if coeff:
                term = coeff
                for v in m:
                    term *= a[v]
                tot += term
        return tot

    best = None
    for c in itertools.product(range(-radius, radius + 1), repeat=len(monos)):
        w = sum(abs(v) for v in c)
        if best is not None and w >= best:
            continue
        ok = True
        for a, b in zip(inputs, bits):
            pv = value(c, a)
            if (pv >= 0) != (b == 1) or (b == 0 and pv > -1):
                ok = False
                break
        if ok:
            best = w
    return best


def test_ilp_comparator_weight_matches_brute_force():
    f = make_gt(2)
    prob = build_representation_problem(f, 1).problem
    lp = min_l1(prob)
    res = ilp_min(prob)
    assert res.status == "optimal"
    expected = brute_force_min_weight(f, 1, radius=3)
    assert expected is not None and expected <= 6  # x1 - y1 + 2x2 - 2y2 works
    assert res.value == expected == 6
    ceil_lp = -((-lp.value.numerator) // lp.value.denominator)
    assert res.value >= ceil_lp
    assert check_witness(prob, res.witness)


def test_ilp_budget_reported():
    f = make_gt(2)
    prob = build_representation_problem(f, 1).problem
    res = ilp_min(prob, node_budget=0)
    assert res.status == "budget"
    assert res.lower_bound is not None


def test_ilp_incumbent_seed():
    pr = LpProblem(1)
    pr.add({0: 1}, ">=", FR(3, 2))
    res = ilp_min(pr, incumbent=[5])
    assert res.value == 2


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_text_round_trip():
    pr = LpProblem(3, objective={0: FR(1), 2: FR(-2, 3)}, nonneg=[False, False, True])
    pr.names = ["a", "b", "c"]
    pr.add({0: FR(1, 2), 1: -1}, ">=", FR(7, 2))
    pr.add({2: 1}, "=", 0)
    text = problem_to_text(pr)
    back = problem_from_text(text)
    assert back.num_vars == 3
    assert back.objective == pr.objective
    assert back.nonneg == pr.nonneg
    assert back.constraints == pr.constraints
    assert problem_to_text(back) == text


# ---------------------------------------------------------------------------
# cross-check against an independent float solver
# ---------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_l1_against_scipy(data):
    scipy_opt = pytest.importorskip("scipy.optimize")
    nvars = data.draw(st.integers(1, 3))
    nrows = data.draw(st.integers(1, 5))
    pr = LpProblem(nvars)
    A_ub, b_ub = [], []
    for _ in range(nrows):
        coeffs = {j: data.draw(st.integers(-3, 3)) for j in range(nvars)}
        rhs = data.draw(st.integers(-4, 4))
        rel = data.draw(st.sampled_from([">=", "<="]))
        pr.add(coeffs, rel, rhs)
        row = [coeffs.get(j, 0) for j in range(nvars)]
        if rel == ">=":
            A_ub.append([-v for v in row])
            b_ub.append(-rhs)
        else:
            A_ub.append(row)
            b_ub.append(rhs)
    out = min_l1(pr)
    # scipy: split c = p - q, minimize sum(p + q)
    import numpy as np

    c = np.ones(2 * nvars)
    A = np.array([[*row, *[-v for v in row]] for row in A_ub], dtype=float)
    ref = scipy_opt.linprog(c, A_ub=A, b_ub=np.array(b_ub, dtype=float), method="highs")
    if out.status == "infeasible":
        assert check_farkas(pr, out.farkas)
        assert ref.status == 2
    else:
        assert ref.status == 0
        assert abs(float(out.value) - ref.fun) < 1e-7
        assert check_witness(pr, out.witness)
        assert check_l1_bound(pr, out.dual, out.value)
