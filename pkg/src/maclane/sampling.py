"""Seeded random elements, polynomials and chain fixtures for property suites.

Shared by the test suite and the CLI selftest so both run the same randomized
invariants.  The seed comes from MACLANE_SEED (fixed default for
reproducibility).  Random field elements are kept small and sparse: the suites
need value variety, not arithmetic stress.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from . import keypoly
from .groundfield import FpTField, QpField, QtRank2Field
from .polyval import Poly, Valuation
from .valuegroup import elem

DEFAULT_SEED = 742025


def seed_from_env() -> int:
    raw = os.environ.get("MACLANE_SEED", "")
    return int(raw) if raw.strip() else DEFAULT_SEED


def rng_from_env() -> random.Random:
    return random.Random(seed_from_env())


def random_element(field, rng: random.Random, *, nonzero: bool = False):
    """Small exact element with a spread of values under v."""
    while True:
        if isinstance(field, QpField):
            n = rng.randint(-9, 9)
            d = rng.randint(1, 9)
            val = Fraction(n, d) * Fraction(field.p) ** rng.randint(-2, 2)
            out = val
        elif isinstance(field, FpTField):
            u = field.gen_u()
            c = rng.randint(1, field.p - 1)
            k = rng.randint(-2, 3)
            out = field.from_int(c) * u ** k
            if rng.random() < 0.3:
                out = out + field.from_int(rng.randint(0, field.p - 1)) * \
                    u ** rng.randint(0, 3)
            if rng.random() < 0.15:
                out = field.zero()
        else:
            t = field.gen_t()
            coeff = Fraction(rng.randint(-6, 6))
            if rng.random() < 0.4:
                coeff *= Fraction(field.p) ** rng.randint(-1, 2)
            out = coeff * t ** rng.randint(0, 2)
            if rng.random() < 0.3:
                out = out + Fraction(rng.randint(-4, 4)) * t ** rng.randint(0, 2)
            if rng.random() < 0.2 and not field.is_zero(out):
                out = out / (t ** rng.randint(1, 2))
        if not (nonzero and field.is_zero(out)):
            return out


def random_poly(field, rng: random.Random, max_degree: int, *,
                monic: bool = False, nonzero: bool = True) -> Poly:
    deg = rng.randint(0, max_degree)
    coeffs = [random_element(field, rng) for _ in range(deg + 1)]
    if monic:
        coeffs[-1] = field.one()
    p = Poly(field, coeffs)
    if nonzero and p.is_zero:
        return Poly.constant(field, field.one())
    return p


# -- chain fixtures -------------------------------------------------------------
#
# Three chains per shipped ground field: the monomial root, a fractional-value
# root (ramified flavour) and a depth-one chain over a degree-two key.


def fixture_fields():
    return [QpField(2), FpTField(2, 1), QtRank2Field(3)]


def chain_fixtures(field) -> list[tuple[str, Valuation]]:
    zero = field.zero()
    if isinstance(field, QpField):
        root = Valuation.depth_zero(field, zero, elem(0))
        steep = Valuation.depth_zero(field, zero, elem(Fraction(1, 2)))
        phi = Poly.parse(field, "x^2+x+1")
        depth1 = keypoly.augment(root, phi, elem(1))
        return [("gauss", root), ("half", steep), ("depth1", depth1)]
    if isinstance(field, FpTField):
        root = Valuation.depth_zero(field, zero, elem(0))
        quarter = Valuation.depth_zero(field, zero, elem(Fraction(1, 4)))
        phi = Poly.parse(field, "x^2+u")
        depth1 = keypoly.augment(quarter, phi, elem(Fraction(3, 4)))
        return [("gauss", root), ("quarter", quarter), ("eisenstein", depth1)]
    root = Valuation.depth_zero(field, zero, elem(0, 0))
    steep = Valuation.depth_zero(field, zero, elem(Fraction(1, 2), 0))
    phi = Poly.parse(field, "x^2+4")
    depth1 = keypoly.augment(root, phi, elem(1, 0))
    return [("gauss", root), ("half", steep), ("quadratic", depth1)]


def all_fixtures() -> list[tuple[str, object, Valuation]]:
    out = []
    for field in fixture_fields():
        for name, chain in chain_fixtures(field):
            out.append((f"{field.descriptor()['kind']}:{name}", field, chain))
    return out


def ordinary_pairs() -> list[tuple[str, Valuation, Valuation, Poly]]:
    """(label, mu, nu, phi) with nu an ordinary augmentation of mu."""
    pairs = []
    for field in fixture_fields():
        fixtures = dict(chain_fixtures(field))
        kind = field.descriptor()["kind"]
        root = fixtures["gauss"]
        x = Poly.gen(field)
        if kind == "Qp":
            steeper = keypoly.augment(root, x, elem(Fraction(1, 2)))
            pairs.append((f"{kind}:gauss->half", root, steeper, x))
            depth1 = fixtures["depth1"]
            pairs.append((f"{kind}:gauss->depth1", root,
                          depth1, depth1.top_phi))
        elif kind == "FpT":
            quarter = fixtures["quarter"]
            steeper = keypoly.augment(root, x, elem(Fraction(1, 4)))
            pairs.append((f"{kind}:gauss->quarter", root, steeper, x))
            eis = fixtures["eisenstein"]
            pairs.append((f"{kind}:quarter->eisenstein", quarter,
                          eis, eis.top_phi))
        else:
            steeper = keypoly.augment(root, x, elem(Fraction(1, 2), 0))
            pairs.append((f"{kind}:gauss->half", root, steeper, x))
            quad = fixtures["quadratic"]
            pairs.append((f"{kind}:gauss->quadratic", root,
                          quad, quad.top_phi))
    return pairs
