"""Dense univariate polynomial and rational-function arithmetic.

Engine room for the ground fields: coefficients live in a tiny driver class
(prime field or rationals), polynomials are low-to-high tuples, and RatFunc
keeps a reduced fraction with monic denominator so equality is syntactic.
"""

from __future__ import annotations

from fractions import Fraction


class PrimeField:
    """F_p with elements stored as ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        self.p = p

    zero = 0
    one = 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def coeff_str(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class Rationals:
    """Q with Fraction elements."""

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def coeff_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")


QQ = Rationals()


# polynomials are tuples, low degree first, no trailing zeros


def pnorm(cf, coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and cf.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def pdeg(coeffs) -> int:
    return len(coeffs) - 1  # -1 for the zero polynomial


def padd(cf, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else cf.zero
        y = b[i] if i < len(b) else cf.zero
        out.append(cf.add(x, y))
    return pnorm(cf, out)


def pneg(cf, a):
    return tuple(cf.neg(x) for x in a)


def psub(cf, a, b):
    return padd(cf, a, pneg(cf, b))


def pmul(cf, a, b):
    if not a or not b:
        return ()
    out = [cf.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if cf.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = cf.add(out[i + j], cf.mul(x, y))
    return pnorm(cf, out)


def pdivmod(cf, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = cf.inv(b[-1])
    rem = list(a)
    quo = [cf.zero] * max(len(a) - len(b) + 1, 0)
    while len(rem) >= len(b) and any(not cf.is_zero(c) for c in rem):
        while rem and cf.is_zero(rem[-1]):
            rem.pop()
        if len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        factor = cf.mul(rem[-1], inv_lead)
        quo[shift] = cf.add(quo[shift], factor)
        for i, c in enumerate(b):
            rem[shift + i] = cf.sub(rem[shift + i], cf.mul(factor, c))
    return pnorm(cf, quo), pnorm(cf, rem)


def pgcd(cf, a, b):
    while b:
        _, r = pdivmod(cf, a, b)
        a, b = b, r
    if a:
        inv = cf.inv(a[-1])
        a = tuple(cf.mul(c, inv) for c in a)  # monic gcd
    return a


def pord(coeffs) -> int:
    """Order of vanishing at 0 (index of lowest nonzero coefficient)."""
    for i, c in enumerate(coeffs):
        if not (c == 0 or c == Fraction(0)):
            return i
    raise ValueError("order of the zero polynomial")


def ppow(cf, a, n: int):
    out = (cf.one,)
    base = a
    while n:
        if n & 1:
            out = pmul(cf, out, base)
        base = pmul(cf, base, base)
        n >>= 1
    return out


def pstr(cf, coeffs, var: str) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if cf.is_zero(c):
            continue
        cs = cf.coeff_str(c)
        if i == 0:
            parts.append(cs)
        else:
            head = "" if cs == "1" else ("-" if cs == "-1" else cs + "*")
            mono = var if i == 1 else f"{var}^{i}"
            parts.append(head + mono)
    s = "+".join(parts)
    return s.replace("+-", "-")


class RatFunc:
    """Reduced ratio of polynomials with monic denominator."""

    __slots__ = ("cf", "num", "den")

    def __init__(self, cf, num, den=None, reduce=True):
        self.cf = cf
        num = pnorm(cf, num)
        den = (cf.one,) if den is None else pnorm(cf, den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce and num and pdeg(den) > 0:
            g = pgcd(cf, num, den)
            if pdeg(g) > 0:
                num, _ = pdivmod(cf, num, g)
                den, _ = pdivmod(cf, den, g)
        if not num:
            den = (cf.one,)
        elif not (den == (cf.one,)):
            inv = cf.inv(den[-1])
            num = tuple(cf.mul(c, inv) for c in num)
            den = tuple(cf.mul(c, inv) for c in den)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, cf, c):
        return cls(cf, (c,) if not cf.is_zero(c) else (), reduce=False)

    @classmethod
    def gen(cls, cf):
        return cls(cf, (cf.zero, cf.one), reduce=False)

    @property
    def is_zero(self) -> bool:
        return not self.num

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc.const(self.cf, self.cf.from_int(other))
        if isinstance(other, Fraction) and isinstance(self.cf, Rationals):
            return RatFunc.const(self.cf, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        cf = self.cf
        if self.den == o.den:
            return RatFunc(cf, padd(cf, self.num, o.num), self.den)
        num = padd(cf, pmul(cf, self.num, o.den), pmul(cf, o.num, self.den))
        return RatFunc(cf, num, pmul(cf, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.cf, pneg(self.cf, self.num), self.den, reduce=False)

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
        cf = self.cf
        return RatFunc(cf, pmul(cf, self.num, o.num),
                       pmul(cf, self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        cf = self.cf
        return RatFunc(cf, pmul(cf, self.num, o.den),
                       pmul(cf, self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc.const(self.cf, self.cf.one) / (self ** (-n))
        cf = self.cf
        return RatFunc(cf, ppow(cf, self.num, n), ppow(cf, self.den, n))

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.cf, self.cf.from_int(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.cf == other.cf and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def order(self) -> int:
        """Order of vanishing at 0; raises on the zero function."""
        return pord(self.num) - pord(self.den)

    def substitute_power(self, k: int) -> "RatFunc":
        """Image under var -> var^k (exponent rescaling, k >= 1)."""
        cf = self.cf

        def blow(coeffs):
            if not coeffs:
                return ()
            out = [cf.zero] * ((len(coeffs) - 1) * k + 1)
            for i, c in enumerate(coeffs):
                out[i * k] = c
            return tuple(out)

        return RatFunc(cf, blow(self.num), blow(self.den), reduce=False)

    def to_str(self, var: str) -> str:
        num = pstr(self.cf, self.num, var)
        if self.den == (self.cf.one,):
            return num
        den = pstr(self.cf, self.den, var)
        nums = num if ("+" not in num and "-" not in num.lstrip("-")) else f"({num})"
        dens = den if ("+" not in den and "-" not in den.lstrip("-")) else f"({den})"
        return f"{nums}/{dens}"

    def __repr__(self):
        return f"RatFunc({self.to_str('T')})"
