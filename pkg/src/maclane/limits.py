"""Continuous families of valuations and limit augmentations.

A family is a finite window onto an increasing sequence of equal-degree
sibling chains: the base valuation with its top step re-pivoted at declared
(phi_n, gamma_n) pairs.  Stability of a polynomial along the family is
semi-decidable; verdicts obtained by scanning the window are labelled as such,
while declared certificates are labelled "certified".
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyval import ChainError, LimitStep, Poly, Valuation
from .valuegroup import GroupElement, INF


class FamilyError(ChainError):
    pass


class StabilityError(ValueError):
    """A required stable limit value is not available."""


class UndeterminedError(StabilityError):
    """Probing exhausted the horizon without a verdict."""


DEFAULT_HORIZON = 12
DEFAULT_WINDOW = 3


@dataclass(frozen=True)
class StabilityReport:
    poly: Poly
    stable: bool
    stable_index: int | None
    stable_value: GroupElement | None
    evidence: str  # "certified" | "window(w)"

    def to_json(self):
        return {
            "poly": str(self.poly),
            "stable": self.stable,
            "stable_index": self.stable_index,
            "stable_value": None if self.stable_value is None
            else self.stable_value.to_json(),
            "evidence": self.evidence,
        }


class ContinuousFamily:
    """Window of an increasing family of same-degree valuations.

    ``points[n]`` gives the pivot pair of the n-th member; member chains share
    the base's prefix.  A pair equal to the base's own top step denotes the
    base itself (families may start at their initial valuation).
    """

    def __init__(self, base: Valuation, points, *, window: int = DEFAULT_WINDOW,
                 certificates=None, unstable_degree: int | None = None,
                 recipe: dict | None = None, basis_degree: int | None = None):
        if window < 2:
            raise FamilyError("stability window must be >= 2")
        points = list(points)
        if len(points) < window:
            raise FamilyError("family horizon must reach the stability window")
        self.base = base
        self.points = points
        self.window = window
        self.unstable_degree = unstable_degree
        self.recipe = recipe
        self._certificates = {}
        for poly, idx in (certificates or {}).items():
            self._certificates[poly.key()] = idx
        self._members = self._build_members()
        self._reports: dict = {}
        self._validate(basis_degree)

    @property
    def horizon(self) -> int:
        return len(self.points) - 1

    @property
    def deg(self) -> int:
        return self.base.deg

    def _build_members(self) -> list[Valuation]:
        base = self.base
        members = []
        for n, (phi, gamma) in enumerate(self.points):
            if gamma.is_infinite:
                raise FamilyError(f"member {n} has value infinity")
            if phi.degree != base.deg:
                raise FamilyError(
                    f"member {n}: degree {phi.degree} breaks the stable "
                    f"degree {base.deg}")
            if phi == base.top_phi and gamma == base.gamma:
                members.append(base)
            else:
                members.append(base.with_top(phi, gamma))
        return members

    def _validate(self, basis_degree):
        gammas = [g for _, g in self.points]
        for n in range(len(gammas) - 1):
            if not gammas[n] < gammas[n + 1]:
                raise FamilyError(
                    f"family values must increase strictly: gamma_{n} = "
                    f"{gammas[n]} !< gamma_{n + 1} = {gammas[n + 1]}")
        deg = basis_degree if basis_degree is not None else 2 * self.deg
        # the family's own pivots witness strictness between neighbours
        basis = test_basis(self.base.field, deg, [p for p, _ in self.points])
        chains = self._members
        if chains[0] is not self.base:
            chains = [self.base] + chains
        for lo, hi in zip(chains, chains[1:]):
            if not less_on_basis(lo, hi, basis):
                raise FamilyError(
                    "family members are not strictly increasing on the test basis")

    def member(self, n: int) -> Valuation:
        return self._members[n]

    def members(self) -> list[Valuation]:
        return list(self._members)

    def probe_values(self, f: Poly) -> list[GroupElement]:
        return [m.evaluate(f) for m in self._members]

    def probe_stability(self, f: Poly, window: int | None = None) -> StabilityReport:
        """Stability verdict for f along the probed window.

        Certified polynomials short-circuit; otherwise the verdict is read off
        the tail of the value sequence and labelled "window(w)".
        """
        w = self.window if window is None else window
        if w < 2:
            raise FamilyError("stability window must be >= 2")
        key = (f.key(), w)
        hit = self._reports.get(key)
        if hit is not None:
            return hit
        cert = self._certificates.get(f.key())
        if cert is not None:
            report = StabilityReport(f, True, cert,
                                     self._members[cert].evaluate(f), "certified")
            self._reports[key] = report
            return report
        vals = self.probe_values(f)
        for n in range(len(vals) - 1):
            if vals[n] > vals[n + 1]:
                raise FamilyError(
                    f"values of {f} decrease along the family at index {n}")
        run = 1
        while run < len(vals) and vals[-1 - run] == vals[-1]:
            run += 1
        evidence = f"window({w})"
        if run >= w:
            report = StabilityReport(f, True, len(vals) - run, vals[-1], evidence)
        elif run == 1:
            report = StabilityReport(f, False, None, None, evidence)
        else:
            raise UndeterminedError(
                f"horizon {self.horizon} exhausted without a stability verdict "
                f"for {f} (final plateau of {run} < window {w})")
        self._reports[key] = report
        return report

    def stable_value(self, f: Poly) -> GroupElement:
        if f.is_zero:
            return INF
        if f.is_constant:
            return self.base.field.value(f.constant_value())
        report = self.probe_stability(f)
        if not report.stable:
            raise StabilityError(
                f"{f} is unstable along the family; no stable value exists")
        return report.stable_value


def probe_stability(family: ContinuousFamily, f: Poly,
                    window: int = DEFAULT_WINDOW) -> StabilityReport:
    return family.probe_stability(f, window)


def test_basis(field, max_degree: int, extra: list[Poly] | None = None) -> list[Poly]:
    """Monomials x^k, k <= max_degree, plus declared scenario polynomials."""
    x = Poly.gen(field)
    basis = [x ** k for k in range(max_degree + 1)]
    if extra:
        basis.extend(extra)
    return basis


def less_on_basis(mu: Valuation, nu: Valuation, basis: list[Poly]) -> bool:
    """mu <= nu on every basis polynomial, strictly on at least one."""
    strict = False
    for f in basis:
        if f.is_zero:
            continue
        a, b = mu.evaluate(f), nu.evaluate(f)
        if a > b:
            return False
        if a < b:
            strict = True
    return strict


def limit_augment(family: ContinuousFamily, phi: Poly, gamma: GroupElement,
                  *, certified_key: bool = False) -> Valuation:
    """Extend past a family at a limit key polynomial.

    The pivot must be unstable along the probed window (the smallest-degree
    screen checks the declared bound and stability of lower-degree monomials),
    and gamma must dominate every probed value of phi.
    """
    base = family.base
    if not phi.is_monic:
        raise ChainError("limit key polynomial must be monic")
    if phi.degree < family.deg:
        raise FamilyError(
            "limit key polynomial degree below the family's stable degree")
    if family.unstable_degree is not None and phi.degree != family.unstable_degree:
        raise FamilyError(
            f"declared smallest unstable degree is {family.unstable_degree}, "
            f"got degree {phi.degree}")
    report = family.probe_stability(phi)
    if report.stable:
        raise FamilyError(
            f"{phi} is stable along the family (up to the horizon); "
            "it cannot serve as a limit key polynomial")
    if not certified_key:
        x = Poly.gen(base.field)
        for j in range(family.deg, phi.degree):
            low = family.probe_stability(x ** j)
            if not low.stable:
                raise FamilyError(
                    f"x^{j} is unstable: a smaller-degree limit key exists")
    for n, val in enumerate(family.probe_values(phi)):
        if not gamma > val:
            raise ChainError(
                f"augmentation value {gamma} not above probed value {val} "
                f"at family index {n}")
    return base.extended(LimitStep(family, phi, gamma))
