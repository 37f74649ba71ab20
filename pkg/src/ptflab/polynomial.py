"""Sparse integer polynomials, witness gates, and the u/v change of basis.

Polynomials live in one of two bases.  The "xy" basis is indexed by the
canonical input variables of a shape (plain ints).  The "uv" basis is
indexed by namespaced difference/sum variables: ``("u", i, j)`` is
x^i_j - y^i_j for weak shapes (and the j-th linear form of group i < d, or
x^d_j - y^d_j, for strong shapes); ``("v", i, j)`` is the matching sum.
Monomial keys are sorted tuples *with repetition* — the u/v image of a
multilinear polynomial need not be multilinear.

Coefficients are arbitrary-precision from the start: the witness gates
carry 2^rank scaling and leave 64-bit range as soon as |K| grows past 30.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .shapes import GroupShape, Variant
from .boolfun import linear_forms
from .tuple_order import OrderContext, enumerate_ordered, order_bits

UvVar = tuple[str, int, int]
Monomial = tuple  # sorted, possibly with repeated variables


class PolynomialError(ValueError):
    pass


def _canon(vars_iter) -> Monomial:
    return tuple(sorted(vars_iter))


@dataclass(frozen=True)
class IntPolynomial:
    """Sparse polynomial with integer coefficients.

    ``shape`` may be None for xy polynomials over anonymous variables
    (e.g. solver witnesses for a raw truth table); the u/v machinery
    requires it.
    """

    basis: str  # "xy" | "uv"
    shape: GroupShape | None
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.basis not in ("xy", "uv"):
            raise PolynomialError(f"unknown basis {self.basis!r}")
        clean = {}
        for key, c in self.coeffs.items():
            c = int(c)
            if c:
                clean[_canon(key)] = c
        object.__setattr__(self, "coeffs", clean)

    @property
    def weight(self) -> int:
        return sum(abs(c) for c in self.coeffs.values())

    @property
    def degree(self) -> int:
        return max((len(k) for k in self.coeffs), default=0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def evaluate(self, assignment) -> int:
        """Exact value at an assignment: a sequence indexed by variable id
        in the xy basis, a mapping from uv tags in the uv basis."""
        total = 0
        for key, c in self.coeffs.items():
            term = c
            for v in key:
                term *= assignment[v]
                if term == 0:
                    break
            total += term
        return total

    def scaled(self, factor: int) -> "IntPolynomial":
        return IntPolynomial(
            self.basis, self.shape, {k: c * factor for k, c in self.coeffs.items()}
        )

    def to_json(self) -> list[dict]:
        """Monomial list; variable tags are ints (xy) or [kind, i, j] (uv)."""
        out = []
        for key in sorted(self.coeffs, key=lambda k: (len(k), k)):
            tags = [list(v) if isinstance(v, tuple) else v for v in key]
            out.append({"vars": tags, "coeff": str(self.coeffs[key])})
        return out

    @classmethod
    def from_json(cls, basis: str, shape: GroupShape, monomials: list[dict]) -> "IntPolynomial":
        coeffs = {}
        for rec in monomials:
            key = _canon(tuple(v) if isinstance(v, list) else int(v) for v in rec["vars"])
            coeffs[key] = coeffs.get(key, 0) + int(rec["coeff"])
        return cls(basis, shape, coeffs)


def eval_poly(p: IntPolynomial, assignment) -> int:
    return p.evaluate(assignment)


# ---------------------------------------------------------------------------
# Derived u/v assignments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UvAssignment:
    """Values of the u/v variables derived from one raw input."""

    shape: GroupShape
    values: dict

    def __getitem__(self, tag: UvVar) -> int:
        return self.values[tag]

    @classmethod
    def from_input(cls, shape: GroupShape, assignment) -> "UvAssignment":
        assignment = tuple(assignment)
        if len(assignment) != shape.n:
            raise PolynomialError(f"expected {shape.n} values")
        values: dict = {}
        d = shape.d
        if shape.variant is Variant.WEAK:
            for i in range(1, d + 1):
                for j in range(1, shape.ks[i - 1] + 1):
                    x = assignment[shape.x_index(i, j)]
                    y = assignment[shape.y_index(i, j)]
                    values[("u", i, j)] = x - y
                    values[("v", i, j)] = x + y
        else:
            for i in range(1, d):
                block = tuple(
                    assignment[shape.x_index(i, j)]
                    for j in range(1, shape.ks[i - 1] + 1)
                )
                for j, ell in enumerate(linear_forms(block)):
                    values[("u", i, j)] = ell
            for j in range(1, shape.ks[-1] + 1):
                x = assignment[shape.x_index(d, j)]
                y = assignment[shape.y_index(d, j)]
                values[("u", d, j)] = x - y
                values[("v", d, j)] = x + y
        return cls(shape, values)


# ---------------------------------------------------------------------------
# The explicit witness gate
# ---------------------------------------------------------------------------


def _weak_term_factors(shape: GroupShape, alpha: tuple[int, ...]) -> list[list[tuple[int, int]]]:
    return [
        [(shape.x_index(i, alpha[i - 1]), 1), (shape.y_index(i, alpha[i - 1]), -1)]
        for i in range(1, shape.d + 1)
    ]


def _strong_term_factors(shape: GroupShape, alpha: tuple[int, ...]) -> list[list[tuple[int, int]]]:
    d = shape.d
    factors = []
    for i in range(1, d):
        j = alpha[i - 1]
        k = shape.ks[i - 1]
        if j == 0:
            factors.append([(shape.x_index(i, 1), 1), (shape.x_index(i, k), 1)])
        else:
            factors.append([(shape.x_index(i, j), 1), (shape.x_index(i, j + 1), -1)])
    jd = alpha[-1]
    factors.append([(shape.x_index(d, jd), 1), (shape.y_index(d, jd), -1)])
    return factors


def witness_gate(shape: GroupShape, exponent_cap: int = 64) -> IntPolynomial:
    """Degree-d gate sum(2^rank * t_rank) over the snake enumeration of K.

    Each t is the product of one difference (or linear form) per group, so
    the top nonzero term strictly dominates everything below it and the
    gate's sign agrees with the hard function everywhere.  Coefficients
    reach 2^|K|, hence the cap.
    """
    if shape.size_K > exponent_cap:
        raise PolynomialError(
            f"|K| = {shape.size_K} exceeds exponent cap {exponent_cap}"
        )
    ctx = OrderContext(shape)
    ordered = enumerate_ordered(ctx)
    coeffs: dict = {}
    for rank, alpha in enumerate(ordered, start=1):
        if shape.variant is Variant.WEAK:
            factors = _weak_term_factors(shape, alpha)
            sign = 1
        else:
            factors = _strong_term_factors(shape, alpha)
            bits = order_bits(ctx, alpha)
            c = sum(
                1 for i in range(shape.d - 1) if alpha[i] == 0 and bits[i] == 0
            )
            sign = -1 if c % 2 else 1
        scale = sign * (1 << rank)
        for choice in product(*factors):
            key = _canon(v for v, _ in choice)
            coeff = scale
            for _, s in choice:
                coeff *= s
            coeffs[key] = coeffs.get(key, 0) + coeff
    return IntPolynomial("xy", shape, coeffs)


# ---------------------------------------------------------------------------
# Change of basis and symmetrization
# ---------------------------------------------------------------------------


def _substitution_rows(shape: GroupShape) -> dict:
    """For each xy variable, its u/v expansion row: 2*var = sum of tagged terms."""
    rows: dict = {}
    d = shape.d
    if shape.variant is Variant.WEAK:
        for i in range(1, d + 1):
            for j in range(1, shape.ks[i - 1] + 1):
                rows[shape.x_index(i, j)] = [(("u", i, j), 1), (("v", i, j), 1)]
                rows[shape.y_index(i, j)] = [(("v", i, j), 1), (("u", i, j), -1)]
        return rows
    for i in range(1, d):
        k = shape.ks[i - 1]
        for j in range(1, k + 1):
            row = [(("u", i, 0), 1)]
            row += [(("u", i, t), -1) for t in range(1, j)]
            row += [(("u", i, t), 1) for t in range(j, k)]
            rows[shape.x_index(i, j)] = row
    for j in range(1, shape.ks[-1] + 1):
        rows[shape.x_index(d, j)] = [(("u", d, j), 1), (("v", d, j), 1)]
        rows[shape.y_index(d, j)] = [(("v", d, j), 1), (("u", d, j), -1)]
    return rows


def to_uv(p: IntPolynomial, monomial_cap: int = 200_000) -> IntPolynomial:
    """Rewrite an xy polynomial over the u/v variables, scaled by 2^d.

    Each variable is half an integer combination of u/v variables, so a
    monomial of degree l picks up 2^-l; multiplying through by 2^d keeps
    every coefficient an integer.  The result's sign agrees with 2^d * p
    at every derived assignment, and its weight is at most 2^d (weak) or
    n^d (strong) times the weight of p.
    """
    if p.basis != "xy":
        raise PolynomialError("to_uv expects an xy polynomial")
    if p.shape is None:
        raise PolynomialError("change of basis needs the group shape")
    d = p.shape.d
    if p.degree > d:
        raise PolynomialError(f"degree {p.degree} exceeds group count {d}")
    rows = _substitution_rows(p.shape)
    out: dict = {}
    for key, c in p.coeffs.items():
        base = c * (1 << (d - len(key)))
        terms: dict = {(): base}
        for var in key:
            nxt: dict = {}
            for mono, coeff in terms.items():
                for tag, s in rows[var]:
                    nk = _canon(mono + (tag,))
                    nc = nxt.get(nk, 0) + coeff * s
                    if nc:
                        nxt[nk] = nc
                    elif nk in nxt:
                        del nxt[nk]
            terms = nxt
        for mono, coeff in terms.items():
            nc = out.get(mono, 0) + coeff
            if nc:
                out[mono] = nc
            elif mono in out:
                del out[mono]
        if len(out) > monomial_cap:
            raise PolynomialError(
                f"expansion exceeded {monomial_cap} monomials; raise the cap"
            )
    return IntPolynomial("uv", p.shape, out)


def symmetrize(p: IntPolynomial) -> IntPolynomial:
    """Keep only monomials with exactly one u-variable from every group
    (and nothing else).  The result is indexable by tuples of K."""
    if p.basis != "uv":
        raise PolynomialError("symmetrize expects a uv polynomial")
    d = p.shape.d
    kept = {}
    for key, c in p.coeffs.items():
        if len(key) != d:
            continue
        groups = set()
        ok = True
        for tag in key:
            kind, i, _ = tag
            if kind != "u" or i in groups:
                ok = False
                break
            groups.add(i)
        if ok and len(groups) == d:
            kept[key] = c
    return IntPolynomial("uv", p.shape, kept)


def symmetric_coefficient(q: IntPolynomial, alpha: tuple[int, ...]) -> int:
    """Coefficient w_alpha of a symmetrized polynomial."""
    key = _canon(("u", i, alpha[i - 1]) for i in range(1, q.shape.d + 1))
    return q.coeffs.get(key, 0)
