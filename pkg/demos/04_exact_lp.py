#!/usr/bin/env python3
"""Exact rational LP with certificates you can re-check by hand.

Every answer the solver gives comes with evidence: feasible systems yield
a witness (verified by substitution), infeasible ones a nonnegative
combination of rows that adds up to an impossibility, and L1 optima carry
dual multipliers proving no feasible point weighs less.
"""

from fractions import Fraction

from ptflab import (
    LpProblem,
    check_farkas,
    check_l1_bound,
    check_witness,
    ilp_min,
    min_l1,
    problem_to_text,
    solve,
)

print("=== infeasibility with a combination certificate ===")
pr = LpProblem(1, names=["x"])
pr.add({0: 1}, ">=", 1)
pr.add({0: 1}, "<=", 0)
out = solve(pr)
print("status:", out.status, " multipliers:", out.farkas)
print("re-checked by exact row combination:", check_farkas(pr, out.farkas))

print()
print("=== optimization ===")
pr = LpProblem(1, objective={0: Fraction(1)})
pr.add({0: 1}, ">=", Fraction(3, 2))
out = solve(pr)
print("min x subject to x >= 3/2:", out.value, "at", out.witness)

print()
print("=== L1 minimization through the dual ===")
pr = LpProblem(2, names=["c1", "c2"])
pr.add({0: 1, 1: 1}, ">=", 2)
pr.add({0: 1, 1: -1}, ">=", 2)
out = min_l1(pr)
print("min |c1|+|c2|:", out.value, "at", out.witness)
print("lower-bound certificate verifies:", check_l1_bound(pr, out.dual, out.value))
print("witness satisfies every row:", check_witness(pr, out.witness))

print()
print("=== integer minimum by branch and bound ===")
pr = LpProblem(1)
pr.add({0: 1}, ">=", Fraction(3, 2))
res = ilp_min(pr)
print(f"relaxation {res.relaxation} -> integer optimum {res.value} at {res.witness}")

print()
print("=== plain-text serialization for replay ===")
pr = LpProblem(2, objective={0: Fraction(1), 1: Fraction(-1, 3)})
pr.add({0: Fraction(1, 2), 1: 1}, ">=", Fraction(5, 2))
print(problem_to_text(pr), end="")
