"""Named rings and ideals used by the regression suite and the tests."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field, GF
from .quotient import GradedQuotientRing, build_quotient_from_text

B_RELATIONS = [
    "x1^2 - x2*x3",
    "x2^2 - x3*x5",
    "x3^2 - x1*x4",
    "x4^2",
    "x5^2",
    "x3*x4",
    "x2*x5",
    "x4*x5",
]
B_IDEAL = ["x1 + x2 + x4", "x2 + x3 + x5"]
# a choice of H_1 generators: z_j = a_{1j} v_1 + a_{2j} v_2 with A = [[a, b], [c, d]]
B_THETA = ("x1 - x2", "x4", "-x3 + x4 + 2*x5", "x2 - x3 - x4")
B_DELTA = "x1*x2 - x1*x3 - x1*x4 + x2*x3 + x2*x4 - x3*x5"
B_STANDARD_2 = ["x1*x2", "x1*x3", "x1*x4", "x1*x5", "x2*x3", "x2*x4", "x3*x5"]
B_STANDARD_3 = ["x1*x2*x3", "x1*x2*x4", "x1*x3*x5"]
B_HILBERT = [1, 5, 7, 3]
B_AMBIENT_BETTI = [1, 8, 20, 23, 13, 3]
# conditions on (a..g) for [a*f1 + b*f2] * [c*x1 + ... + g*x5] to lie in the defining ideal
B_SEVEN = [
    "a*c + b*d + a*e + b*e",
    "a*d + b*d + b*e + b*g",
    "a*c + b*e + a*f",
    "a*c + b*c + a*d",
    "b*c + a*e",
    "b*c + a*g",
    "a*d + a*f + b*f",
]


@dataclass(frozen=True)
class Example:
    name: str
    nvars: int
    relations: tuple
    ideal: tuple
    nu: int
    principal_exact: bool
    note: str

    def ring(self, field: Field | None = None) -> GradedQuotientRing:
        return build_quotient_from_text(list(self.relations), self.nvars, field or GF(101))


EXAMPLES = [
    Example("B", 5, tuple(B_RELATIONS), tuple(B_IDEAL), 2, False, "two-generated q.c.i., not embedded"),
    Example("ci2-max", 2, ("x1^2", "x2^2"), ("x1", "x2"), 2, False, "maximal ideal of a complete intersection"),
    Example("ci2-linear", 2, ("x1^2", "x2^2"), ("x1 + x2",), 1, True, "linear exact zero-divisor, complement x1 - x2"),
    Example("ci2-x1", 2, ("x1^2", "x2^2"), ("x1",), 1, True, "self-complementary exact zero-divisor"),
    Example("dual-numbers", 1, ("x1^2",), ("x1",), 1, True, "k[x]/(x^2)"),
    Example("ci3-max", 3, ("x1^2", "x2^2", "x3^2"), ("x1", "x2", "x3"), 3, False, "sharp case of nu <= l - 1"),
    Example("ci2-mixed", 2, ("x1^2", "x2^3"), ("x1",), 1, True, "exact zero-divisor x1 in a non-equigenerated complete intersection"),
]


def example(name: str) -> Example:
    for ex in EXAMPLES:
        if ex.name == name:
            return ex
    raise KeyError(name)


def ring_B(field: Field | None = None) -> GradedQuotientRing:
    return example("B").ring(field)
