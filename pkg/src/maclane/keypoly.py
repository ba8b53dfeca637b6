"""Key-polynomial predicates, tangent directions, ordinary augmentations.

Full irreducibility of an initial term in the graded algebra is not decidable
from the data we keep, so ``augment`` gates on an exact minimality test plus a
randomized product screen; callers may bypass the screen for certified keys.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .polyval import (ChainError, LimitStep, OrdinaryStep, Poly, SupportError,
                      Valuation)
from .valuegroup import GroupElement, gmin


class KeyPolyError(ChainError):
    pass


class NotComparableError(ValueError):
    pass


@dataclass(frozen=True)
class TangentDirection:
    """Minimal-degree witness of mu < nu, i.e. mu(rep) < nu(rep)."""

    representative: Poly
    degree: int


def is_minimal(mu: Valuation, f: Poly) -> bool:
    """deg f equals (initial-term degree) times (chain degree)."""
    if f.is_zero:
        raise SupportError("minimality of the zero polynomial")
    if mu.has_support:
        raise KeyPolyError("minimality needs a chain with finite top value")
    if f.is_constant:
        return False
    return f.degree == mu.deg_mu(f) * mu.deg


def divides_initial(mu: Valuation, phi: Poly, f: Poly) -> bool:
    """True iff the top key's initial term divides the initial term of f.

    Read off the expansion: the division holds exactly when every index
    attaining the minimum is >= 1.
    """
    if phi != mu.top_phi:
        raise KeyPolyError("divides_initial expects the chain's top key")
    if f.is_zero:
        raise SupportError("initial term of the zero polynomial")
    return min(mu.s_set(f)) >= 1


def _product_screen(mu: Valuation, phi: Poly, rng: random.Random,
                    trials: int) -> bool:
    """Randomized check that initial-term divisibility by phi is prime-like.

    Samples pairs (f, g); whenever the candidate divides in(f*g) it must
    divide in(f) or in(g).  A single violation disproves irreducibility.
    """

    def min_s(h: Poly) -> int:
        return min(mu.s_set(h, phi))

    samples: list[Poly] = []
    x = Poly.gen(mu.field)
    for c in range(-2, 3):
        samples.append(x - mu.field.from_int(c))
    field = mu.field
    d = phi.degree
    for _ in range(trials):
        deg = rng.randint(1, max(2 * d - 1, 1))
        coeffs = [field.from_int(rng.randint(-4, 4)) for _ in range(deg)]
        coeffs.append(field.one())
        samples.append(Poly(field, coeffs))
    for i, f in enumerate(samples):
        for g in samples[i:]:
            fg = f * g
            if fg.is_zero or fg.degree < d:
                continue
            if min_s(fg) >= 1 and min_s(f) == 0 and min_s(g) == 0:
                return False
    return True


def key_check(mu: Valuation, phi: Poly, *, rng: random.Random | None = None,
              trials: int = 12) -> dict:
    """Screen report for a candidate key polynomial: exact minimality plus
    the randomized product test."""
    if not phi.is_monic:
        return {"monic": False, "minimal": False, "screen": False}
    minimal = is_minimal(mu, phi)
    screen = False
    if minimal:
        screen = _product_screen(mu, phi, rng or random.Random(0), trials)
    return {"monic": True, "minimal": minimal, "screen": screen}


def augment(mu: Valuation, phi: Poly, gamma: GroupElement, *,
            certified: bool = False, rng: random.Random | None = None) -> Valuation:
    """Ordinary augmentation of the chain at (phi, gamma), gamma > mu(phi).

    ``certified=True`` records that the caller vouches for irreducibility of
    the initial term and skips the randomized screen; minimality is always
    checked exactly.
    """
    if not phi.is_monic:
        raise KeyPolyError(f"key polynomial must be monic: {phi}")
    if not is_minimal(mu, phi):
        raise KeyPolyError(
            f"{phi} is not minimal for the chain: deg {phi.degree} != "
            f"{mu.deg_mu(phi)} * {mu.deg}")
    if not certified and not _product_screen(mu, phi, rng or random.Random(0), 12):
        raise KeyPolyError(
            f"{phi} failed the product screen: its initial term factors")
    return mu.extended(OrdinaryStep(phi, gamma))


def _is_chain_extension(mu: Valuation, nu: Valuation):
    """First new step of nu when nu extends mu's chain, else None."""
    ms, ns = mu.steps(), nu.steps()
    if len(ns) <= len(ms) or ns[:len(ms)] != ms:
        return None
    return ns[len(ms)]


def tangent_direction(mu: Valuation, nu: Valuation, *,
                      basis: list[Poly] | None = None) -> TangentDirection:
    """Minimal-degree monic representative with mu(rep) < nu(rep).

    For a nu extending mu's chain this is the pivot of the first new step
    (for a limit step: the earliest family pivot that already separates the
    two).  Otherwise comparability is decided on the supplied test basis only.
    """
    first_new = _is_chain_extension(mu, nu)
    if first_new is not None:
        if isinstance(first_new, LimitStep):
            fam = first_new.family
            for phi_n, _ in fam.points:
                if mu.evaluate(phi_n) < nu.evaluate(phi_n):
                    return TangentDirection(phi_n, phi_n.degree)
            raise NotComparableError(
                "no family pivot separates the chain from its augmentation")
        phi = first_new.phi
        if not mu.evaluate(phi) < nu.evaluate(phi):
            raise NotComparableError("augmentation step does not increase phi")
        return TangentDirection(phi, phi.degree)
    if basis is None:
        raise NotComparableError(
            "non-nested chains: supply a test basis to compare on")
    witnesses = []
    for f in basis:
        if f.is_zero:
            continue
        a, b = mu.evaluate(f), nu.evaluate(f)
        if a > b:
            raise NotComparableError(
                f"mu > nu at {f}: chains are not comparable on the basis")
        if a < b and f.is_monic:
            witnesses.append(f)
    if not witnesses:
        raise NotComparableError("mu == nu on the whole test basis")
    best = min(witnesses, key=lambda g: g.degree)
    return TangentDirection(best, best.degree)
