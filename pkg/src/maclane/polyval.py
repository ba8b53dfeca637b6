"""Polynomials over a ground field and valuations given by augmentation chains.

A ``Valuation`` is a chain: a depth-zero root assigning a value to x - a, then
ordinary or limit augmentation steps.  Evaluation expands a polynomial in the
top step's key polynomial and takes the minimum of coefficient value plus
index times the step value, recursing on coefficients; limit steps value their
coefficients through the attached family's stable limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .parsing import ParseError, parse_expression
from .valuegroup import (GroupElement, INF, Subgroup, elem, gmin,
                         smallest_multiple_in)


class PolyError(ValueError):
    pass


class NotMonicError(PolyError):
    pass


class SupportError(PolyError):
    """Operation undefined on elements of the support."""


class ChainError(ValueError):
    """Malformed augmentation chain."""


class Poly:
    """Dense polynomial over a ground field, low-degree-first coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def gen(cls, field):
        return cls(field, (field.zero(), field.one()))

    @classmethod
    def linear(cls, field, a):
        """x - a"""
        return cls(field, (field.zero() - a, field.one()))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if self.is_zero:
            raise PolyError("leading coefficient of 0")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == self.field.one()

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    def constant_value(self):
        return self.coeffs[0] if self.coeffs else self.field.zero()

    def key(self):
        return self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero()

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.constant(self.field, self.field.from_int(other))
        # a bare field element
        try:
            return Poly.constant(self.field, other)
        except Exception:  # pragma: no cover - defensive
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field,
                    (self.coeff(i) + o.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        z = self.field.zero()
        return Poly(self.field, (z - c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero or o.is_zero:
            return Poly(self.field, ())
        z = self.field.zero()
        out = [z] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.is_constant:
            raise PolyError("polynomial division: use divmod for nonscalars")
        inv = self.field.inv(o.constant_value())
        return Poly(self.field, (c * inv for c in self.coeffs))

    def __rtruediv__(self, other):
        if not self.is_constant:
            raise PolyError("cannot divide by a nonconstant polynomial")
        o = self._coerce(other)
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            raise PolyError("negative polynomial power")
        out = Poly.constant(self.field, self.field.one())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, divisor: "Poly"):
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        inv_lead = field.inv(divisor.leading)
        rem = list(self.coeffs)
        dn = len(divisor.coeffs)
        qn = max(len(rem) - dn + 1, 0)
        quo = [field.zero()] * qn
        for shift in range(qn - 1, -1, -1):
            lead = rem[shift + dn - 1]
            if field.is_zero(lead):
                continue
            factor = lead * inv_lead
            quo[shift] = factor
            for i, c in enumerate(divisor.coeffs):
                rem[shift + i] = rem[shift + i] - factor * c
        return Poly(field, quo), Poly(field, rem[:dn - 1])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if self.field.is_zero(c):
                continue
            cs = self.field.format(c)
            if i == 0:
                parts.append(cs if _is_simple(cs) else f"({cs})")
                continue
            mono = "x" if i == 1 else f"x^{i}"
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            elif _is_simple(cs):
                parts.append(f"{cs}{mono}" if cs.isdigit() else f"{cs}*{mono}")
            else:
                parts.append(f"({cs}){mono}")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"Poly({self})"

    @classmethod
    def parse(cls, field, text: str) -> "Poly":
        names = {"x": cls.gen(field)}
        if hasattr(field, "gen_t"):
            names["t"] = field.gen_t()
        if hasattr(field, "gen_u"):
            u = field.gen_u()
            names["u"] = u
            names["t"] = u ** (field.p ** field.prec)
        if hasattr(field, "p"):
            names.setdefault("p", field.from_int(field.p))
        value = parse_expression(text, names, field.from_int)
        if not isinstance(value, Poly):
            value = cls.constant(field, value)
        return value


def _is_simple(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return all(ch not in "+-/ " for ch in body)


def phi_expand(f: Poly, phi: Poly) -> list[Poly]:
    """Coefficients a_i of f = sum a_i phi^i with deg a_i < deg phi. Exact."""
    if not phi.is_monic:
        raise NotMonicError(f"expansion pivot must be monic: {phi}")
    if phi.degree < 1:
        raise PolyError("expansion pivot must have degree >= 1")
    out = []
    rest = f
    while not rest.is_zero:
        rest, r = rest.divmod(phi)
        out.append(r)
    return out or [Poly(f.field, ())]


@dataclass(frozen=True)
class ExpansionTerm:
    """One term a_i * phi^i of an expansion, with its value under a chain."""

    index: int
    coeff: Poly
    value: GroupElement


@dataclass(frozen=True)
class DepthZero:
    a: object            # ground field element; the step [v; x - a, gamma]
    gamma: GroupElement


@dataclass(frozen=True)
class OrdinaryStep:
    phi: Poly
    gamma: GroupElement


@dataclass(frozen=True)
class LimitStep:
    family: object       # ContinuousFamily; duck-typed to avoid an import cycle
    phi: Poly
    gamma: GroupElement


Step = DepthZero | OrdinaryStep | LimitStep


def _term_value(base: GroupElement, i: int, gamma: GroupElement) -> GroupElement:
    if i == 0:
        return base
    if base.is_infinite or gamma.is_infinite:
        return INF
    return base + gamma.scale(i)


class Valuation:
    """An augmentation chain; immutable, with prefix sharing and a value cache."""

    __slots__ = ("field", "step", "prev", "_values")

    def __init__(self, field, step: Step, prev: "Valuation | None"):
        self.field = field
        self.step = step
        self.prev = prev
        self._values = {}

    # -- construction --------------------------------------------------------

    @classmethod
    def depth_zero(cls, field, a, gamma: GroupElement) -> "Valuation":
        if gamma.coords is not None and gamma.rank != field.rank:
            raise ChainError(
                f"gamma rank {gamma.rank} does not match field rank {field.rank}")
        return cls(field, DepthZero(a, gamma), None)

    def extended(self, step: Step) -> "Valuation":
        """Append a step; structural checks only (see keypoly.augment)."""
        if self.gamma.is_infinite:
            raise ChainError("cannot extend past a step with value infinity")
        if step.phi.degree < self.top_phi.degree:
            raise ChainError("key polynomial degrees must not decrease")
        if not step.phi.is_monic:
            raise NotMonicError("key polynomials must be monic")
        mu_phi = self.evaluate(step.phi)
        if not step.gamma > mu_phi:
            raise ChainError(
                f"augmentation value {step.gamma} not above current value {mu_phi}")
        return Valuation(self.field, step, self)

    def with_top(self, phi: Poly, gamma: GroupElement) -> "Valuation":
        """Sibling chain: same prefix, top step re-pivoted at (phi, gamma)."""
        s = self.step
        if isinstance(s, DepthZero):
            if phi.degree != 1 or not phi.is_monic:
                raise ChainError("depth-zero pivot must be monic of degree one")
            a = self.field.zero() - phi.coeff(0)
            return Valuation(self.field, DepthZero(a, gamma), None)
        if isinstance(s, OrdinaryStep):
            return Valuation(self.field, OrdinaryStep(phi, gamma), self.prev)
        return Valuation(self.field, LimitStep(s.family, phi, gamma), self.prev)

    # -- structure ------------------------------------------------------------

    def steps(self) -> list[Step]:
        out = []
        node = self
        while node is not None:
            out.append(node.step)
            node = node.prev
        out.reverse()
        return out

    def nodes(self) -> list["Valuation"]:
        out = []
        node = self
        while node is not None:
            out.append(node)
            node = node.prev
        out.reverse()
        return out

    @property
    def depth(self) -> int:
        return len(self.steps()) - 1

    @property
    def gamma(self) -> GroupElement:
        return self.step.gamma

    @property
    def top_phi(self) -> Poly:
        s = self.step
        if isinstance(s, DepthZero):
            return Poly.linear(self.field, s.a)
        return s.phi

    @property
    def deg(self) -> int:
        """Degree of the chain: degree of the top key polynomial."""
        return self.top_phi.degree

    @property
    def has_support(self) -> bool:
        return self.gamma.is_infinite

    @property
    def is_limit_top(self) -> bool:
        return isinstance(self.step, LimitStep)

    # -- evaluation -----------------------------------------------------------

    def _coeff_value(self, c: Poly) -> GroupElement:
        s = self.step
        if isinstance(s, DepthZero):
            return self.field.value(c.constant_value())
        if isinstance(s, OrdinaryStep):
            return self.prev.evaluate(c)
        return s.family.stable_value(c)

    def evaluate(self, f: Poly) -> GroupElement:
        """Chain value of f by the expansion-minimum rule; INF iff f in supp."""
        if f.is_zero:
            return INF
        if f.is_constant:
            return self.field.value(f.constant_value())
        key = f.key()
        hit = self._values.get(key)
        if hit is not None:
            return hit
        gamma = self.gamma
        result = gmin(
            _term_value(self._coeff_value(c), i, gamma)
            for i, c in enumerate(phi_expand(f, self.top_phi))
            if not c.is_zero
        )
        self._values[key] = result
        return result

    def __call__(self, f: Poly) -> GroupElement:
        return self.evaluate(f)

    def expansion_terms(self, f: Poly, phi: Poly | None = None) -> list[ExpansionTerm]:
        """Expansion of f in phi (default: top key) with chain values per term."""
        phi = self.top_phi if phi is None else phi
        phi_val = self.evaluate(phi) if phi != self.top_phi else self.gamma
        out = []
        for i, c in enumerate(phi_expand(f, phi)):
            if c.is_zero:
                continue
            out.append(ExpansionTerm(i, c, _term_value(self.evaluate(c), i, phi_val)))
        return out

    def s_set(self, f: Poly, phi: Poly | None = None) -> list[int]:
        """Indices where the expansion minimum is attained (sorted)."""
        if f.is_zero:
            raise SupportError("s_set of the zero polynomial")
        terms = self.expansion_terms(f, phi)
        m = gmin(t.value for t in terms)
        if m.is_infinite:
            raise SupportError(f"{f} lies in the support of the chain")
        return sorted(t.index for t in terms if t.value == m)

    def deg_mu(self, f: Poly, phi: Poly | None = None) -> int:
        """Degree of the initial term of f as a power of the top key's image.

        Convention: 0 for every f outside the support when the chain ends with
        value infinity (no key polynomials remain).
        """
        s = self.s_set(f, phi)
        return max(s)

    # -- value-group data -------------------------------------------------------

    def group_data(self, bound: int | None = None):
        """(value group, unit-value subgroup, relative ramification index).

        The unit-value subgroup is assembled from the ground group and the
        values of all steps below the top; the index e is the least multiple
        of the top value landing in it (None if no multiple does).
        """
        gens = list(self.field.group_generators())
        steps = self.steps()
        for s in steps[:-1]:
            if s.gamma.is_infinite:
                raise ChainError("infinite value below the top of a chain")
            gens.append(s.gamma)
        g0 = Subgroup(self.field.rank, gens)
        top = steps[-1].gamma
        if top.is_infinite:
            return g0, g0, 1
        g1 = g0.join([top])
        if bound is None:
            e = smallest_multiple_in(top, g0)
        else:
            e = smallest_multiple_in(top, g0, bound)
        return g1, g0, e

    def value_group(self) -> Subgroup:
        return self.group_data()[0]

    def ramification_index(self):
        return self.group_data()[2]

    # -- presentation ------------------------------------------------------------

    def step_label(self, step: Step) -> str:
        if isinstance(step, DepthZero):
            phi = Poly.linear(self.field, step.a)
        else:
            phi = step.phi
        return f"{phi},{step.gamma}"

    def __str__(self):
        labels = [self.step_label(s) for s in self.steps()]
        return "v " + " ".join(f"--({lab})-->" for lab in labels)

    def __repr__(self):
        return f"Valuation[{self}]"
