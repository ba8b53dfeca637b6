"""Computable valued ground fields (K, v).

Three families cover every base field the scenario corpus needs:

* ``QpField``      -- Q with the p-adic order, rank one.
* ``FpTField``     -- F_p(u) with the u-adic order, where u stands for
  t^(1/p^m) at a configurable precision exponent m; values are reported in
  t-units so different precisions compare directly.
* ``QtRank2Field`` -- Q(t) with the composite rank-two valuation
  v(a) = (ord_t(a), ord_p(in(a))), in(a) the initial t-coefficient.

Elements are exact (Fraction, or reduced RatFunc); v(a) = infinity iff a = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .parsing import ParseError, parse_expression
from .rfunc import QQ, PrimeField, RatFunc, pord
from .valuegroup import GroupElement, INF, elem


class GroundFieldError(ValueError):
    pass


def ord_p_int(n: int, p: int) -> int:
    if n == 0:
        raise GroundFieldError("p-adic order of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p_frac(q: Fraction, p: int) -> int:
    """Exact p-adic order of a nonzero rational by factor-stripping."""
    if q == 0:
        raise GroundFieldError("p-adic order of 0")
    return ord_p_int(q.numerator, p) - ord_p_int(q.denominator, p)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _require_prime(p: int):
    if not _is_prime(p):
        raise GroundFieldError(f"{p} is not prime")


@dataclass(frozen=True)
class QpField:
    """Q with ord_p."""

    p: int

    def __post_init__(self):
        _require_prime(self.p)

    rank = 1

    def group_generators(self):
        return [elem(1)]

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        return 1 / a

    def value(self, a) -> GroupElement:
        if a == 0:
            return INF
        return elem(ord_p_frac(a, self.p))

    def parse(self, text: str):
        return parse_expression(text, {"p": Fraction(self.p)}, Fraction)

    def format(self, a) -> str:
        return str(a)

    def descriptor(self) -> dict:
        return {"kind": "Qp", "p": self.p}

    def __str__(self):
        return f"Q with ord_{self.p}"


@dataclass(frozen=True)
class FpTField:
    """F_p(u), u-adic, with u representing t^(1/p^m) for precision m >= 0."""

    p: int
    prec: int = 0

    def __post_init__(self):
        _require_prime(self.p)
        if self.prec < 0:
            raise GroundFieldError("precision exponent must be >= 0")

    rank = 1

    @property
    def _cf(self):
        return PrimeField(self.p)

    @property
    def unit_value(self) -> Fraction:
        """v(u) in t-units."""
        return Fraction(1, self.p ** self.prec)

    def group_generators(self):
        return [elem(self.unit_value)]

    def zero(self):
        return RatFunc.const(self._cf, 0)

    def one(self):
        return RatFunc.const(self._cf, 1)

    def from_int(self, n: int):
        return RatFunc.const(self._cf, n % self.p)

    def is_zero(self, a) -> bool:
        return a.is_zero

    def inv(self, a):
        return RatFunc.const(self._cf, 1) / a

    def value(self, a) -> GroupElement:
        if a.is_zero:
            return INF
        return elem(Fraction(a.order(), self.p ** self.prec))

    def gen_u(self):
        return RatFunc.gen(self._cf)

    def parse(self, text: str):
        u = RatFunc.gen(self._cf)
        names = {"u": u, "t": u ** (self.p ** self.prec)}
        return parse_expression(text, names, self.from_int)

    def format(self, a) -> str:
        return a.to_str("u")

    def descriptor(self) -> dict:
        return {"kind": "FpT", "p": self.p, "prec": self.prec}

    def __str__(self):
        return f"F_{self.p}(t^(1/{self.p}^{self.prec})) with the t-adic order"


@dataclass(frozen=True)
class QtRank2Field:
    """Q(t) with v(a) = (ord_t(a), ord_p(in(a))) in Z^2 lex."""

    p: int

    def __post_init__(self):
        _require_prime(self.p)

    rank = 2

    def group_generators(self):
        return [elem(1, 0), elem(0, 1)]

    def zero(self):
        return RatFunc.const(QQ, Fraction(0))

    def one(self):
        return RatFunc.const(QQ, Fraction(1))

    def from_int(self, n: int):
        return RatFunc.const(QQ, Fraction(n))

    def is_zero(self, a) -> bool:
        return a.is_zero

    def inv(self, a):
        return RatFunc.const(QQ, Fraction(1)) / a

    def initial_coefficient(self, a) -> Fraction:
        """in(a) = (a * t^-ord_t(a))(0) on the reduced fraction."""
        if a.is_zero:
            raise GroundFieldError("initial coefficient of 0")
        return a.num[pord(a.num)] / a.den[pord(a.den)]

    def value(self, a) -> GroupElement:
        if a.is_zero:
            return INF
        return elem(a.order(), ord_p_frac(self.initial_coefficient(a), self.p))

    def gen_t(self):
        return RatFunc.gen(QQ)

    def parse(self, text: str):
        names = {"t": RatFunc.gen(QQ), "p": RatFunc.const(QQ, Fraction(self.p))}
        return parse_expression(text, names, self.from_int)

    def format(self, a) -> str:
        return a.to_str("t")

    def descriptor(self) -> dict:
        return {"kind": "QtRank2", "p": self.p}

    def __str__(self):
        return f"Q(t) with (ord_t, ord_{self.p} of the initial coefficient)"


GroundField = QpField | FpTField | QtRank2Field


def lift_precision(field: FpTField, new_prec: int):
    """Refine F_p(t^(1/p^m)) to precision m' >= m.

    Returns the larger field and the element re-expression map realizing
    u_old = u_new^(p^(m'-m)).  Values in t-units are unchanged.
    """
    if not isinstance(field, FpTField):
        raise GroundFieldError("lift_precision applies to the FpT family only")
    if new_prec < field.prec:
        raise GroundFieldError(
            f"cannot lower precision {field.prec} to {new_prec}")
    lifted = FpTField(field.p, new_prec)
    step = field.p ** (new_prec - field.prec)

    def convert(a: RatFunc) -> RatFunc:
        return a.substitute_power(step)

    return lifted, convert


def field_from_descriptor(desc: dict) -> GroundField:
    try:
        kind = desc["kind"]
    except (TypeError, KeyError):
        raise GroundFieldError(f"malformed field descriptor: {desc!r}")
    if kind == "Qp":
        return QpField(int(desc["p"]))
    if kind == "FpT":
        return FpTField(int(desc["p"]), int(desc.get("prec", 0)))
    if kind == "QtRank2":
        return QtRank2Field(int(desc["p"]))
    raise GroundFieldError(f"unknown field kind {kind!r}")
