"""Sign-representation checks, sign-degree, minimal weights, and the
certified lemma/theorem instances built on top of the exact LP layer.

The conventions in force everywhere: a polynomial p sign-represents f when
f(x) = 1 exactly on the inputs with p(x) >= 0 (value 0 or -1 otherwise,
depending on f's convention).  LP encodings put a -1 margin on the
negative class, which makes LP feasibility equivalent to representability
by an integer gate: any rational solution scales up to an integer one and
any integer gate already satisfies the margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .boolfun import BoolFun, assignment_of_index, linear_forms, make_g
from .exact_lp import (
    GE,
    LE,
    IlpResult,
    LpOutcome,
    LpProblem,
    check_farkas,
    check_witness,
    ilp_min,
    min_l1,
    solve,
)
from .polynomial import (
    IntPolynomial,
    UvAssignment,
    symmetric_coefficient,
    symmetrize,
    to_uv,
    witness_gate,
)
from .shapes import Convention, GroupShape, Variant
from .tuple_order import OrderContext, OrderError, dominance_chain, enumerate_ordered

DEFAULT_INPUT_CAP = 24


class AnalysisError(ValueError):
    pass


class BudgetError(AnalysisError):
    pass


class HypothesisError(AnalysisError):
    """Theorem hypotheses do not hold for the shape; bound not asserted."""


# ---------------------------------------------------------------------------
# Evaluating polynomials over entire input cubes
# ---------------------------------------------------------------------------


def _bit_arrays(n: int, convention: Convention) -> list[np.ndarray]:
    idx = np.arange(1 << n, dtype=np.int64)
    bits = [((idx >> j) & 1).astype(np.int64) for j in range(n)]
    if convention is Convention.PLUS_MINUS:
        bits = [2 * b - 1 for b in bits]
    return bits


def _uv_arrays(shape: GroupShape, convention: Convention) -> dict:
    """Exact value array of every u/v variable over all inputs."""
    bits = _bit_arrays(shape.n, convention)
    arrays: dict = {}
    d = shape.d
    if shape.variant is Variant.WEAK:
        for i in range(1, d + 1):
            for j in range(1, shape.ks[i - 1] + 1):
                x = bits[shape.x_index(i, j)]
                y = bits[shape.y_index(i, j)]
                arrays[("u", i, j)] = x - y
                arrays[("v", i, j)] = x + y
        return arrays
    for i in range(1, d):
        k = shape.ks[i - 1]
        block = [bits[shape.x_index(i, j)] for j in range(1, k + 1)]
        arrays[("u", i, 0)] = block[0] + block[k - 1]
        for j in range(1, k):
            arrays[("u", i, j)] = block[j - 1] - block[j]
    for j in range(1, shape.ks[-1] + 1):
        x = bits[shape.x_index(d, j)]
        y = bits[shape.y_index(d, j)]
        arrays[("u", d, j)] = x - y
        arrays[("v", d, j)] = x + y
    return arrays


def _poly_value_table(p: IntPolynomial, n: int, convention: Convention) -> np.ndarray | None:
    """Exact values of p at every input, or None if int64 could overflow."""
    if p.basis == "xy":
        arrays = {j: a for j, a in enumerate(_bit_arrays(n, convention))}
    else:
        arrays = _uv_arrays(p.shape, convention)
    maxabs = {k: int(np.max(np.abs(a))) if a.size else 0 for k, a in arrays.items()}
    bound = 0
    for key, c in p.coeffs.items():
        term = abs(c)
        for v in key:
            term *= maxabs[v]
        bound += term
    if bound >= 2**62:
        return None
    vals = np.zeros(1 << n, dtype=np.int64)
    for key, c in p.coeffs.items():
        term = np.full(1 << n, c, dtype=np.int64)
        for v in key:
            term = term * arrays[v]
        vals += term
    return vals


def _fun_bits(f: BoolFun) -> np.ndarray:
    nbytes = max(1, (f.size + 7) // 8)
    raw = np.frombuffer(f.table.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[: f.size]


@dataclass(frozen=True)
class Counterexample:
    index: int
    assignment: tuple
    poly_value: int
    fun_value: int


def _poly_value_at(p: IntPolynomial, assignment) -> int:
    if p.basis == "xy":
        return p.evaluate(assignment)
    return p.evaluate(UvAssignment.from_input(p.shape, assignment).values)


def check_sign_representation(
    p: IntPolynomial, f: BoolFun, input_cap: int = DEFAULT_INPUT_CAP
) -> Counterexample | None:
    """Exhaustive comparison of sign(p) against f; None means PASS.

    Works in either basis: uv polynomials are evaluated at the derived
    u/v assignment of each raw input.  Returns the first failing input.
    """
    if f.n > input_cap:
        raise BudgetError(f"n = {f.n} exceeds the exhaustive-check cap {input_cap}")
    if p.basis == "uv" and p.shape is None:
        raise AnalysisError("uv polynomial needs a shape")
    if p.shape is not None and p.shape.n != f.n:
        raise AnalysisError("polynomial and function disagree on n")
    vals = _poly_value_table(p, f.n, f.convention)
    if vals is not None:
        bits = _fun_bits(f)
        mismatch = (vals >= 0) != (bits == 1)
        if not mismatch.any():
            return None
        idx = int(np.nonzero(mismatch)[0][0])
        pv = int(vals[idx])
    else:
        idx = None
        for i in range(f.size):
            pv = _poly_value_at(p, assignment_of_index(i, f.n, f.convention))
            if (pv >= 0) != (f.bit(i) == 1):
                idx = i
                break
        if idx is None:
            return None
    assignment = assignment_of_index(idx, f.n, f.convention)
    return Counterexample(idx, assignment, pv, f.value_at(idx))


# ---------------------------------------------------------------------------
# Representation problems
# ---------------------------------------------------------------------------


@dataclass
class RepresentationProblem:
    """Sign constraints of f over a monomial basis, as an LpProblem.

    One constraint per input: p >= 0 on the positive class, p <= -1 on the
    negative class.  ``monomials`` are variable-id tuples (xy basis) or
    coordinate tuples of K (uv-symmetrized basis).
    """

    f: BoolFun
    degree: int
    basis: str
    monomials: list
    problem: LpProblem
    shape: GroupShape | None = None

    def witness_polynomial(self, coeffs) -> IntPolynomial:
        if self.basis == "xy":
            keys = self.monomials
        else:
            keys = [
                tuple(("u", i, a) for i, a in enumerate(alpha, start=1))
                for alpha in self.monomials
            ]
        poly = {}
        for key, c in zip(keys, coeffs):
            c = int(c)
            if c:
                poly[key] = c
        return IntPolynomial(
            "xy" if self.basis == "xy" else "uv", self.shape, poly
        )


def build_representation_problem(
    f: BoolFun,
    degree: int,
    basis: str = "xy",
    shape: GroupShape | None = None,
    input_cap: int = DEFAULT_INPUT_CAP,
) -> RepresentationProblem:
    if f.n > input_cap:
        raise BudgetError(f"n = {f.n} exceeds the input cap {input_cap}")
    bits = _fun_bits(f)
    if basis == "xy":
        arrays = {j: a for j, a in enumerate(_bit_arrays(f.n, f.convention))}
        monomials = [
            m for deg in range(degree + 1) for m in combinations(range(f.n), deg)
        ]
        factor_keys = monomials
    elif basis == "uv-sym":
        if shape is None:
            raise AnalysisError("uv-sym basis needs the group shape")
        arrays = _uv_arrays(shape, f.convention)
        ctx = OrderContext(shape)
        monomials = enumerate_ordered(ctx)
        factor_keys = [
            tuple(("u", i, a) for i, a in enumerate(alpha, start=1))
            for alpha in monomials
        ]
    else:
        raise AnalysisError(f"unknown basis {basis!r}")

    cols = []
    for key in factor_keys:
        col = np.ones(f.size, dtype=np.int64)
        for v in key:
            col = col * arrays[v]
        cols.append(col)

    problem = LpProblem(len(monomials))
    seen = set()
    for idx in range(f.size):
        row = {}
        for m, col in enumerate(cols):
            v = int(col[idx])
            if v:
                row[m] = Fraction(v)
        rel = GE if bits[idx] == 1 else LE
        rhs = Fraction(0) if bits[idx] == 1 else Fraction(-1)
        sig = (tuple(sorted(row.items())), rel)
        if sig in seen:
            continue
        seen.add(sig)
        problem.constraints.append((row, rel, rhs))
    return RepresentationProblem(f, degree, basis, monomials, problem, shape)


# ---------------------------------------------------------------------------
# Sign-degree and minimal weight
# ---------------------------------------------------------------------------


@dataclass
class SignDegreeResult:
    value: int | None
    outcomes: dict  # degree -> (RepresentationProblem, LpOutcome)

    @property
    def certificates(self) -> dict:
        return {
            d: out.farkas
            for d, (_, out) in self.outcomes.items()
            if out.status == "infeasible"
        }


def sign_degree(
    f: BoolFun,
    dmax: int,
    basis: str = "xy",
    shape: GroupShape | None = None,
    max_pivots: int = 200_000,
) -> SignDegreeResult:
    """Smallest degree whose representation LP is feasible, with verified
    infeasibility certificates for every smaller degree."""
    outcomes = {}
    for d in range(dmax + 1):
        prob = build_representation_problem(f, d, basis=basis, shape=shape)
        out = solve(prob.problem, max_pivots=max_pivots)
        outcomes[d] = (prob, out)
        if out.status == "feasible":
            return SignDegreeResult(d, outcomes)
    return SignDegreeResult(None, outcomes)


@dataclass
class MinWeightResult:
    mode: str
    value: Fraction | int | None
    witness: IntPolynomial | None
    outcome: LpOutcome | None = None
    ilp: IlpResult | None = None


def min_weight(
    f: BoolFun,
    degree: int,
    mode: str = "lp",
    shape: GroupShape | None = None,
    node_budget: int = 2000,
    max_pivots: int = 200_000,
    incumbent: IntPolynomial | None = None,
) -> MinWeightResult:
    """Minimal gate weight at the given degree: exact rational lower bound
    (lp mode) or exact integer optimum with an integer witness (exact mode).

    Exact mode raises BudgetError when branch and bound runs out of nodes;
    the message carries the best bounds found.  Wide-gap instances (the
    strong shapes especially) may need a large node budget to close."""
    prob = build_representation_problem(f, degree, shape=shape)
    if mode == "lp":
        out = min_l1(prob.problem, max_pivots=max_pivots)
        if out.status != "optimal":
            return MinWeightResult("lp", None, None, outcome=out)
        return MinWeightResult("lp", out.value, None, outcome=out)
    if mode != "exact":
        raise AnalysisError("mode must be 'lp' or 'exact'")
    seed = None
    if incumbent is not None:
        index = {m: i for i, m in enumerate(prob.monomials)}
        seed = [0] * len(prob.monomials)
        for key, c in incumbent.coeffs.items():
            if key not in index:
                raise AnalysisError("incumbent uses monomials outside the basis")
            seed[index[key]] = c
    res = ilp_min(
        prob.problem,
        node_budget=node_budget,
        max_pivots=max_pivots,
        incumbent=seed,
    )
    if res.status == "infeasible":
        return MinWeightResult("exact", None, None, ilp=res)
    witness = None
    if res.witness is not None:
        witness = prob.witness_polynomial(res.witness)
        bad = check_sign_representation(witness, f)
        if bad is not None:
            raise AnalysisError(f"integer witness failed re-verification at {bad}")
    if res.status == "budget":
        raise BudgetError(
            f"branch-and-bound budget exhausted after {res.nodes} nodes "
            f"(bounds [{res.lower_bound}, {res.value}])"
        )
    return MinWeightResult("exact", res.value, witness, ilp=res)


# ---------------------------------------------------------------------------
# Coefficient lemmas for the base functions
# ---------------------------------------------------------------------------


def _gt_u_rows(k: int) -> list[tuple[dict, str, Fraction]]:
    """Sign constraints of the comparator over u = x - y in {-1,0,1}^k,
    for a pure linear gate sum(w_j u_j).  Most significant coordinate last."""
    rows = []
    for u in product((-1, 0, 1), repeat=k):
        cls = 1
        for j in reversed(range(k)):
            if u[j]:
                cls = 1 if u[j] > 0 else 0
                break
        row = {j: Fraction(u[j]) for j in range(k) if u[j]}
        if cls:
            rows.append((row, GE, Fraction(0)))
        else:
            rows.append((row, LE, Fraction(-1)))
    return rows


def _g_u_rows(which: str, k: int) -> list[tuple[dict, str, Fraction]]:
    """Sign constraints of the all-equal detector over its linear forms."""
    fun = make_g(k, which)
    rows = []
    for x in product((-1, 1), repeat=k):
        u = linear_forms(x)
        row = {j: Fraction(u[j]) for j in range(k) if u[j]}
        if fun.eval(x) == 1:
            rows.append((row, GE, Fraction(0)))
        else:
            rows.append((row, LE, Fraction(-1)))
    return rows


def _base_rows(base: str, k: int) -> list:
    if base == "gt":
        return _gt_u_rows(k)
    if base in ("g1", "g0"):
        return _g_u_rows(base, k)
    raise AnalysisError(f"unknown base function {base!r}")


@dataclass
class InequalityCheck:
    description: str
    status: str  # CERTIFIED | VIOLATED
    problem: LpProblem
    farkas: list | None = None
    witness: list | None = None


@dataclass
class CertifyResult:
    lemma: str
    k: int
    status: str  # CERTIFIED | VIOLATED
    checks: list


def certify_negated_row(
    base: str, k: int, coeffs: dict, rel: str, rhs, max_pivots: int = 200_000
) -> InequalityCheck:
    """Adjoin the negation of a claimed coefficient inequality to the sign
    constraints of a base function and certify infeasibility via Farkas.

    Feasibility instead yields an explicit integer gate violating the
    claim (the LP witness scaled by the common denominator).
    """
    problem = LpProblem(k)
    problem.constraints = list(_base_rows(base, k))
    desc_rhs = Fraction(rhs)
    problem.add(coeffs, rel, desc_rhs)
    out = solve(problem, max_pivots=max_pivots)
    desc = f"{base}(k={k}): adjoin {coeffs} {rel} {desc_rhs}"
    if out.status == "infeasible":
        if not check_farkas(problem, out.farkas):
            raise AnalysisError("certificate failed independent re-check")
        return InequalityCheck(desc, "CERTIFIED", problem, farkas=out.farkas)
    denom = 1
    for v in out.witness:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    scaled = [int(v * denom) for v in out.witness]
    if not check_witness(problem, scaled):
        raise AnalysisError("scaled violation witness failed re-check")
    return InequalityCheck(desc, "VIOLATED", problem, witness=scaled)


def _lemma_negations(lemma: str, k: int) -> list[tuple[str, dict, str, Fraction]]:
    """(description, negated row) per inequality the lemma asserts."""
    out = []
    if lemma == "gt_exp":
        out.append(("w1 >= 1", {0: Fraction(1)}, LE, Fraction(0)))
        for j in range(2, k + 1):
            c = 1 << (j - 2)
            out.append(
                (
                    f"w{j} >= {c}*w1",
                    {j - 1: Fraction(1), 0: Fraction(-c)},
                    LE,
                    Fraction(-1),
                )
            )
    elif lemma == "gt_step":
        for j in range(2, k + 1):
            out.append(
                (
                    f"w{j} >= w{j-1}",
                    {j - 1: Fraction(1), j - 2: Fraction(-1)},
                    LE,
                    Fraction(-1),
                )
            )
    elif lemma == "g1_pos":
        for j in range(k):
            out.append((f"w{j} > 0", {j: Fraction(1)}, LE, Fraction(0)))
    elif lemma == "g1_mono":
        for j in range(2, k):
            out.append(
                (
                    f"w{j} > w{j-1}",
                    {j: Fraction(1), j - 1: Fraction(-1)},
                    LE,
                    Fraction(0),
                )
            )
    elif lemma == "g0_all":
        out.append(("w0 < 0", {0: Fraction(1)}, GE, Fraction(0)))
        for j in range(1, k):
            out.append((f"w{j} > 0", {j: Fraction(1)}, LE, Fraction(0)))
        for j in range(2, k):
            out.append(
                (
                    f"w{j-1} > w{j}",
                    {j - 1: Fraction(1), j: Fraction(-1)},
                    LE,
                    Fraction(0),
                )
            )
    else:
        raise AnalysisError(f"unknown lemma {lemma!r}")
    return out


_LEMMA_BASE = {
    "gt_exp": "gt",
    "gt_step": "gt",
    "g1_pos": "g1",
    "g1_mono": "g1",
    "g0_all": "g0",
}


def certify_coefficient_lemma(lemma: str, k: int, max_pivots: int = 200_000) -> CertifyResult:
    """CERTIFIED iff no integer gate for the base function violates any of
    the lemma's coefficient inequalities; each inequality gets its own
    Farkas certificate, independently re-checked."""
    base = _LEMMA_BASE.get(lemma)
    if base is None:
        raise AnalysisError(f"unknown lemma {lemma!r}")
    if k < 2:
        raise AnalysisError("need k >= 2")
    checks = []
    for desc, coeffs, rel, rhs in _lemma_negations(lemma, k):
        chk = certify_negated_row(base, k, coeffs, rel, rhs, max_pivots=max_pivots)
        checks.append(
            InequalityCheck(desc, chk.status, chk.problem, chk.farkas, chk.witness)
        )
    status = "CERTIFIED" if all(c.status == "CERTIFIED" for c in checks) else "VIOLATED"
    return CertifyResult(lemma, k, status, checks)


# ---------------------------------------------------------------------------
# Theorem bounds and full instances
# ---------------------------------------------------------------------------


def theorem_bound(shape: GroupShape) -> int:
    """Exact integer floor of the instance lower-bound formula.

    Weak: 2^((k_d - 2) * k_1 * ... * k_{d-1} - d).  Strong: the product uses
    (k_i - 1) and the correction term is d * ceil(log2 n) (rounding up keeps
    the reported bound conservative).  Exponents below zero floor to 0.
    """
    violations = shape.theorem_violations()
    if violations:
        raise HypothesisError("; ".join(violations))
    kd = shape.ks[-1]
    if shape.variant is Variant.WEAK:
        prod = 1
        for k in shape.ks[:-1]:
            prod *= k
        exponent = (kd - 2) * prod - shape.d
    else:
        prod = 1
        for k in shape.ks[:-1]:
            prod *= k - 1
        exponent = (kd - 2) * prod - shape.d * (shape.n - 1).bit_length()
    return 1 << exponent if exponent >= 0 else 0


@dataclass
class BoundReport:
    shape: GroupShape
    n: int
    d: int
    gate_weight: int
    theorem_value: int | None
    lp_lower_bound: Fraction | None = None
    exact_weight: int | None = None
    sign_degree: int | None = None
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v in ("PASS", "CERTIFIED", "SKIPPED") for v in self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "n": self.n,
            "d": self.d,
            "gate_weight": str(self.gate_weight),
            "theorem_value": None if self.theorem_value is None else str(self.theorem_value),
            "lp_lower_bound": None if self.lp_lower_bound is None else str(self.lp_lower_bound),
            "exact_weight": None if self.exact_weight is None else str(self.exact_weight),
            "sign_degree": self.sign_degree,
            "verdicts": dict(self.verdicts),
            "notes": list(self.notes),
        }

    def csv_row(self) -> list[str]:
        verdict_str = ";".join(f"{k}={v}" for k, v in sorted(self.verdicts.items()))
        return [
            self.shape.describe(),
            str(self.n),
            str(self.d),
            "" if self.theorem_value is None else str(self.theorem_value),
            "" if self.lp_lower_bound is None else str(self.lp_lower_bound),
            "" if self.exact_weight is None else str(self.exact_weight),
            str(self.gate_weight),
            verdict_str,
        ]


def verify_theorem_instance(
    shape: GroupShape,
    mode: str = "lp",
    node_budget: int = 2000,
    max_pivots: int = 400_000,
) -> BoundReport:
    """Run the whole verification pipeline on one shape.

    Builds the hard function and its witness gate, checks the gate
    exhaustively, certifies the sign-degree (feasible at d, Farkas at
    d-1), computes the LP (and optionally exact) minimal weight, and
    compares against the theorem bound and the coefficient-domination
    chain on the solved witness.
    """
    from .boolfun import make_hard

    f = make_hard(shape)
    gate = witness_gate(shape)
    d = shape.d
    report = BoundReport(shape, shape.n, d, gate.weight, None)

    cx = check_sign_representation(gate, f)
    report.verdicts["gate"] = "PASS" if cx is None else "FAIL"
    if cx is not None:
        report.notes.append(f"gate counterexample at index {cx.index}")

    if shape.variant is Variant.WEAK:
        expected = (1 << d) * ((1 << (shape.size_K + 1)) - 2)
        report.verdicts["gate_weight_formula"] = (
            "PASS" if gate.weight == expected else "FAIL"
        )

    up = to_uv(gate)
    cap = (1 << d) if shape.variant is Variant.WEAK else shape.n**d
    report.verdicts["basis_change"] = "PASS" if up.weight <= cap * gate.weight else "FAIL"

    sd = sign_degree(f, d, max_pivots=max_pivots)
    report.sign_degree = sd.value
    sd_ok = sd.value == d and all(
        out.status == "infeasible" and check_farkas(prob.problem, out.farkas)
        for dd, (prob, out) in sd.outcomes.items()
        if dd < d
    )
    report.verdicts["sign_degree"] = "PASS" if sd_ok else "FAIL"

    try:
        report.theorem_value = theorem_bound(shape)
    except HypothesisError as exc:
        report.theorem_value = None
        report.notes.append(f"bound not asserted: {exc}")

    lp = min_weight(f, d, mode="lp", shape=shape, max_pivots=max_pivots)
    report.lp_lower_bound = lp.value

    witness_poly = None
    if mode == "exact":
        try:
            exact = min_weight(
                f,
                d,
                mode="exact",
                shape=shape,
                node_budget=node_budget,
                max_pivots=max_pivots,
                incumbent=gate,
            )
            report.exact_weight = exact.value
            witness_poly = exact.witness
        except BudgetError as exc:
            report.verdicts["exact_weight"] = "SKIPPED"
            report.notes.append(str(exc))

    if report.theorem_value is not None:
        if report.exact_weight is not None:
            report.verdicts["theorem_bound"] = (
                "PASS" if report.theorem_value <= report.exact_weight else "FAIL"
            )
        else:
            report.notes.append(
                f"lp lower bound {report.lp_lower_bound} vs theorem {report.theorem_value} (data only)"
            )

    if witness_poly is not None and not shape.theorem_violations():
        try:
            chain = dominance_chain(OrderContext(shape), 1)
            q = symmetrize(to_uv(witness_poly))
            w_alpha = symmetric_coefficient(q, chain.alpha)
            w_beta = symmetric_coefficient(q, chain.beta)
            ok = w_alpha > 0 and w_beta >= chain.factor * w_alpha
            report.verdicts["domination_chain"] = "PASS" if ok else "FAIL"
            report.notes.append(
                f"chain {chain.alpha}->{chain.beta}: w_alpha={w_alpha}, "
                f"w_beta={w_beta}, factor={chain.factor}"
            )
        except OrderError as exc:
            report.verdicts["domination_chain"] = "FAIL"
            report.notes.append(f"chain replay failed: {exc}")

    return report
