#!/usr/bin/env python3
"""The explicit degree-d gates and the u/v change of basis.

The gate assigns weight 2^rank to the coordinate product at each snake
position; the top nonzero term then outranks everything below it, so the
gate's sign reproduces the hard function exactly.  Rewriting in difference
variables (u = x - y) and sums (v = x + y) multiplies the weight by at
most 2^d, and throwing away every monomial that misses a u-group keeps the
sign on all inputs.
"""

from ptflab import (
    OrderContext,
    check_sign_representation,
    dominance_chain,
    enumerate_ordered,
    make_hard,
    make_shape,
    symmetric_coefficient,
    symmetrize,
    to_uv,
    witness_gate,
)

shape = make_shape("weak", (2, 3))
names = shape.var_names()
gate = witness_gate(shape)

print("=== the gate for weak (2,3) ===")
print("snake order:", enumerate_ordered(OrderContext(shape)))
print("monomials:", len(gate.coeffs), " degree:", gate.degree, " weight:", gate.weight)
print("closed form 2^d (2^(|K|+1) - 2) =", (1 << shape.d) * ((1 << (shape.size_K + 1)) - 2))
some = sorted(gate.coeffs.items(), key=lambda kv: abs(kv[1]))[:4]
for key, c in some:
    term = "*".join(names[v] for v in key)
    print(f"  {c:+d} {term}")

f = make_hard(shape)
print("exhaustive sign check:", "PASS" if check_sign_representation(gate, f) is None else "FAIL")

print()
print("=== change of basis ===")
up = to_uv(gate)
print(f"W(p') = {up.weight} <= 2^d W(p) = {(1 << shape.d) * gate.weight}")
q = symmetrize(up)
print("symmetrized monomials (one u per group):", len(q.coeffs))
print("still a gate for f:", "PASS" if check_sign_representation(q, f) is None else "FAIL")

print()
print("=== the domination chain on the gate's own coefficients ===")
ch = dominance_chain(OrderContext(shape), 1)
w_a = symmetric_coefficient(q, ch.alpha)
w_b = symmetric_coefficient(q, ch.beta)
print(f"w_{ch.alpha} = {w_a}, w_{ch.beta} = {w_b}, required ratio {ch.factor}")
print("holds:", w_b >= ch.factor * w_a > 0)

print()
print("=== the strong gate carries signs on the 0-th linear forms ===")
strong = make_shape("strong", (3, 3))
sgate = witness_gate(strong)
sf = make_hard(strong)
print("strong (3,3) gate weight:", sgate.weight)
print("exhaustive sign check:", "PASS" if check_sign_representation(sgate, sf) is None else "FAIL")
sup = to_uv(sgate)
print(f"W(p') = {sup.weight} <= n^d W(p) = {strong.n ** strong.d * sgate.weight}")
