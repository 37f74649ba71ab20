#!/usr/bin/env python3
"""Build the hard function families and poke at their structure.

The weak family generalizes the greater-than comparison: the input is cut
into coordinate groups, and the value is the sign of the difference at the
largest snake-ordered position where the two halves disagree.  Restricting
all groups but one recovers a plain comparator (or, in the strong variant,
the all-equal detector g), which is exactly what the weight argument
exploits.
"""

from ptflab import Convention, make_g, make_gt, make_hard, make_shape
from ptflab.boolfun import from_bits

print("=== the comparator and the hard function coincide for one group ===")
gt = make_gt(3)
hard1 = make_hard(make_shape("weak", (3,)))
print("make_gt(3) table == make_hard(weak (3,)):", gt.table == hard1.table)
print("x=(1,0,1)=5, y=(0,1,1)=6 ->", gt.eval((1, 0, 1, 0, 1, 1)), "(5 >= 6 is false)")

print()
print("=== weak (2,3): 10 variables, scan the snake top-down ===")
shape = make_shape("weak", (2, 3))
f = make_hard(shape)
print("label:", f.label, " table bits:", f.size)
a = [0] * shape.n
print("x == y everywhere ->", f.eval(a), "(no nonzero product defaults to 1)")
a[shape.x_index(1, 1)] = 1  # make the first group differ so products survive
a[shape.x_index(2, 3)] = 1  # x ahead at the top of the second group
print("x ahead at the top coordinate ->", f.eval(a))
a[shape.x_index(2, 3)] = 0
a[shape.y_index(2, 3)] = 1  # now y is ahead there instead
print("y ahead at the top coordinate ->", f.eval(a))

print()
print("=== the strong variant swaps in the all-equal detector ===")
g1 = make_g(3, "g1")
g0 = make_g(3, "g0")
print("g1(+1,+1,+1) =", g1.eval((1, 1, 1)), " g1(+1,-1,+1) =", g1.eval((1, -1, 1)))
print("g0(-1,-1,-1) =", g0.eval((-1, -1, -1)), " g0(-1,+1,+1) =", g0.eval((-1, 1, 1)))

strong = make_shape("strong", (3, 3))
fs = make_hard(strong)
print("strong (3,3) uses", strong.n, "variables:", strong.var_names())

print()
print("=== restrictions: fixing all groups but one ===")
bits = []
for idx in range(1 << 6):
    a = [0] * strong.n
    for j in range(1, 4):
        a[strong.x_index(1, j)] = 1  # all equal: only the 0-th linear form survives
    for j in range(3):
        a[strong.x_index(2, j + 1)] = 1 if (idx >> j) & 1 else -1
        a[strong.y_index(2, j + 1)] = 1 if (idx >> (3 + j)) & 1 else -1
    bits.append(1 if fs.eval(a) == 1 else 0)
restricted = from_bits(bits, 6, Convention.PLUS_MINUS)
print("free last group with x^1 all-equal -> comparator:", restricted.table == make_gt(3).table)

print()
print("=== serialization ===")
blob = f.to_json()
print({k: (v if k != "table_hex" else v[:16] + "...") for k, v in blob.items()})
