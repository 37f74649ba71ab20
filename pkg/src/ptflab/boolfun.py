"""Truth tables for the hard function families and their building blocks.

Everything here is a total Boolean function stored as a packed truth table.
Inputs are enumerated lexicographically: table bit ``i`` is the value at the
assignment whose j-th variable is bit j of ``i`` (variable 0 least
significant).  In the {0,1} convention bits are values; in the {-1,+1}
convention bit 0 decodes to -1 and bit 1 to +1, for inputs and outputs
alike, so switching conventions is a pure relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .shapes import Convention, GroupShape, ShapeError, Variant
from .tuple_order import OrderContext, enumerate_ordered, order_bits


class EvalError(ValueError):
    """Assignment does not fit the function."""


def bit_to_value(bit: int, convention: Convention) -> int:
    if convention is Convention.ZERO_ONE:
        return bit
    return 1 if bit else -1


def value_to_bit(value: int, convention: Convention) -> int:
    if convention is Convention.ZERO_ONE:
        if value not in (0, 1):
            raise EvalError(f"value {value} not in {{0,1}}")
        return value
    if value not in (-1, 1):
        raise EvalError(f"value {value} not in {{-1,1}}")
    return 1 if value == 1 else 0


def assignment_of_index(index: int, n: int, convention: Convention) -> tuple[int, ...]:
    return tuple(bit_to_value((index >> j) & 1, convention) for j in range(n))


def index_of_assignment(values, convention: Convention) -> int:
    idx = 0
    for j, v in enumerate(values):
        idx |= value_to_bit(v, convention) << j
    return idx


@dataclass(frozen=True)
class BoolFun:
    """A Boolean function of n variables as a packed truth table.

    ``table`` holds 2^n bits, bit i being the output at input index i
    (output bit 1 encodes value 1; bit 0 encodes 0 or -1 depending on the
    convention).
    """

    n: int
    convention: Convention
    table: int
    label: str = ""

    def __post_init__(self) -> None:
        if self.n < 0:
            raise EvalError("need n >= 0")
        if self.table < 0 or self.table >> (1 << self.n):
            raise EvalError(f"table does not fit 2^{self.n} bits")

    @property
    def size(self) -> int:
        return 1 << self.n

    def bit(self, index: int) -> int:
        if not 0 <= index < self.size:
            raise EvalError(f"input index {index} out of range")
        return (self.table >> index) & 1

    def value_at(self, index: int) -> int:
        return bit_to_value(self.bit(index), self.convention)

    def eval(self, assignment) -> int:
        assignment = tuple(assignment)
        if len(assignment) != self.n:
            raise EvalError(f"expected {self.n} values, got {len(assignment)}")
        return self.value_at(index_of_assignment(assignment, self.convention))

    def to_json(self) -> dict:
        nbytes = max(1, (self.size + 7) // 8)
        return {
            "n": self.n,
            "convention": self.convention.value,
            "label": self.label,
            "table_hex": self.table.to_bytes(nbytes, "little").hex(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BoolFun":
        table = int.from_bytes(bytes.fromhex(obj["table_hex"]), "little")
        return cls(
            n=int(obj["n"]),
            convention=Convention(obj["convention"]),
            table=table,
            label=obj.get("label", ""),
        )


def from_bits(bits, n: int, convention: Convention, label: str = "") -> BoolFun:
    table = 0
    for i, b in enumerate(bits):
        if b:
            table |= 1 << i
    return BoolFun(n=n, convention=convention, table=table, label=label)


# ---------------------------------------------------------------------------
# Base families
# ---------------------------------------------------------------------------


def make_gt(k: int, msb: str = "last") -> BoolFun:
    """Comparison of two k-bit numbers: 1 iff x >= y.

    ``msb="last"`` reads x_k, y_k as the most significant bits (the usual
    direction); ``msb="first"`` reads x_1, y_1 as most significant.
    """
    if k < 1:
        raise ShapeError("comparator needs k >= 1")
    if msb not in ("last", "first"):
        raise ValueError("msb must be 'last' or 'first'")
    weights = [1 << j for j in range(k)] if msb == "last" else [1 << (k - 1 - j) for j in range(k)]
    n = 2 * k
    table = 0
    for idx in range(1 << n):
        x = sum(weights[j] for j in range(k) if (idx >> j) & 1)
        y = sum(weights[j] for j in range(k) if (idx >> (k + j)) & 1)
        if x >= y:
            table |= 1 << idx
    return BoolFun(n=n, convention=Convention.ZERO_ONE, table=table, label=f"gt{k}-msb-{msb}")


def make_g(k: int, variant: str = "g1") -> BoolFun:
    """The all-equal detector on {-1,1}^k.

    g1 outputs -x_k unless all bits agree, in which case it outputs x_k.
    g0 outputs x_1 unless all bits agree, in which case it outputs -x_1.
    """
    if k < 2:
        raise ShapeError("all-equal detector needs k >= 2")
    if variant not in ("g1", "g0"):
        raise ValueError("variant must be 'g1' or 'g0'")
    table = 0
    for idx in range(1 << k):
        x = assignment_of_index(idx, k, Convention.PLUS_MINUS)
        equal = all(v == x[0] for v in x)
        if variant == "g1":
            val = x[-1] if equal else -x[-1]
        else:
            val = -x[0] if equal else x[0]
        if val == 1:
            table |= 1 << idx
    return BoolFun(n=k, convention=Convention.PLUS_MINUS, table=table, label=f"{variant}-k{k}")


def linear_forms(x: tuple[int, ...]) -> list[int]:
    """L_0(x) = x_1 + x_k and L_j(x) = x_j - x_{j+1} for j = 1..k-1."""
    k = len(x)
    return [x[0] + x[k - 1]] + [x[j - 1] - x[j] for j in range(1, k)]


# ---------------------------------------------------------------------------
# The composite hard functions
# ---------------------------------------------------------------------------


def _weak_bits(shape: GroupShape) -> list[int]:
    ctx = OrderContext(shape)
    tuples_desc = list(reversed(enumerate_ordered(ctx)))
    d = shape.d
    xi = [[shape.x_index(i, j) for j in range(1, shape.ks[i - 1] + 1)] for i in range(1, d + 1)]
    yi = [[shape.y_index(i, j) for j in range(1, shape.ks[i - 1] + 1)] for i in range(1, d + 1)]
    bits = []
    for idx in range(1 << shape.n):
        out = 1
        for alpha in tuples_desc:
            prod = 1
            for i in range(d):
                j = alpha[i] - 1
                u = ((idx >> xi[i][j]) & 1) - ((idx >> yi[i][j]) & 1)
                if u == 0:
                    prod = 0
                    break
                prod *= u
            if prod:
                out = 1 if prod > 0 else 0
                break
        bits.append(out)
    return bits


def _strong_bits(shape: GroupShape) -> list[int]:
    ctx = OrderContext(shape)
    tuples_desc = list(reversed(enumerate_ordered(ctx)))
    d = shape.d
    # sign flags depend only on the tuple, never on the input
    signs = []
    for alpha in tuples_desc:
        bits_ = order_bits(ctx, alpha)
        c = sum(1 for i in range(d - 1) if alpha[i] == 0 and bits_[i] == 0)
        signs.append(-1 if c % 2 else 1)
    xd = [shape.x_index(d, j) for j in range(1, shape.ks[-1] + 1)]
    yd = [shape.y_index(d, j) for j in range(1, shape.ks[-1] + 1)]
    group_vars = [
        [shape.x_index(i, j) for j in range(1, shape.ks[i - 1] + 1)] for i in range(1, d)
    ]
    bits = []
    for idx in range(1 << shape.n):
        ells = []
        for vars_i in group_vars:
            block = tuple(1 if (idx >> v) & 1 else -1 for v in vars_i)
            ells.append(linear_forms(block))
        out = 1
        for alpha, sign in zip(tuples_desc, signs):
            prod = sign
            for i in range(d - 1):
                f = ells[i][alpha[i]]
                if f == 0:
                    prod = 0
                    break
                prod *= f
            if prod:
                j = alpha[-1] - 1
                u = ((idx >> xd[j]) & 1) - ((idx >> yd[j]) & 1)
                if u == 0:
                    continue
                prod *= 2 * u  # x - y on {-1,1} inputs is twice the bit difference
            if prod:
                out = 1 if prod > 0 else 0
                break
        bits.append(out)
    return bits


def make_hard(shape: GroupShape) -> BoolFun:
    """The d-group hard function for ``shape``.

    Scans K from the top of the snake order and returns the sign of the
    first nonzero coordinate product; inputs on which every product
    vanishes get value 1.  Computed by direct scan, independently of the
    witness polynomial, so the two can cross-check each other.
    """
    if shape.variant is Variant.WEAK:
        bits = _weak_bits(shape)
        convention = Convention.ZERO_ONE
    else:
        bits = _strong_bits(shape)
        convention = Convention.PLUS_MINUS
    label = f"hard-{shape.describe()}"
    return from_bits(bits, shape.n, convention, label)
