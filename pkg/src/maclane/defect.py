"""Defects of augmentation steps and the chained defect formula.

An ordinary step always has defect 1.  A limit step's defect is the stabilized
minimum of the initial-term degrees of its limit key polynomial along the
family members (a cofinal set of tangent-direction pivots).  Totals combine
multiplicatively; the ramification total is computed as a value-group index
and cross-checked against the per-step indices on chains declared proper.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .limits import UndeterminedError
from .polyval import (ChainError, DepthZero, LimitStep, OrdinaryStep, Poly,
                      Step, Valuation)
from .valuegroup import Subgroup


class NormalizationError(ChainError):
    """A quantity that must be a positive integer failed to be one."""


@dataclass(frozen=True)
class AugmentationReport:
    kind: str                       # "ordinary" | "limit"
    deg_before: int
    deg_after: int
    tangent_degree: int
    d: int
    f: int
    e_before: int
    stabilization_index: int | None
    degree_probes: tuple[int, ...] | None = None

    def to_json(self):
        return {
            "kind": self.kind,
            "deg_before": self.deg_before,
            "deg_after": self.deg_after,
            "tangent_degree": self.tangent_degree,
            "d": self.d,
            "f": self.f,
            "e_before": self.e_before,
            "stabilization_index": self.stabilization_index,
            "degree_probes": None if self.degree_probes is None
            else list(self.degree_probes),
        }


@dataclass(frozen=True)
class DefectReport:
    steps: tuple[AugmentationReport, ...]
    d_total: int
    e_total: int
    f_total: int
    efd: int
    e_steps: tuple[int, ...]
    proper_consistent: bool
    limit_degree_ratio: Fraction
    support_degree: int | None      # deg of the support generator, if any

    def to_json(self):
        return {
            "steps": [s.to_json() for s in self.steps],
            "d_total": self.d_total,
            "e_total": self.e_total,
            "f_total": self.f_total,
            "efd": self.efd,
            "e_steps": list(self.e_steps),
            "proper_consistent": self.proper_consistent,
            "limit_degree_ratio": str(self.limit_degree_ratio),
            "support_degree": self.support_degree,
        }


def _e_of(mu: Valuation) -> int:
    e = mu.ramification_index()
    if e is None:
        raise NormalizationError(
            "relative ramification index is infinite (value-transcendental "
            "step); the inertia formula does not apply")
    return e


def inertia_of_step(mu: Valuation, step: Step) -> int:
    """Inertia degree of the augmentation mu -> [mu; step].

    Limit steps contribute 1.  Ordinary steps contribute
    tangent degree / (e(mu) * deg(mu)), validated to be a positive integer;
    a non-integer signals a non-proper or mis-normalized chain.
    """
    if isinstance(step, LimitStep):
        return 1
    if isinstance(step, DepthZero):
        raise ChainError("depth-zero is not an augmentation step")
    f = Fraction(step.phi.degree, _e_of(mu) * mu.deg)
    if f.denominator != 1 or f <= 0:
        raise NormalizationError(
            f"inertia degree {f} is not a positive integer: the augmentation "
            "is improper or the chain is mis-normalized")
    return int(f)


def defect_of_step(mu: Valuation, step: Step, *, window: int = 2) -> AugmentationReport:
    """Defect and bookkeeping of the single augmentation mu -> [mu; step]."""
    if isinstance(step, DepthZero):
        raise ChainError("depth-zero is not an augmentation step")
    e_before = _e_of(mu)
    f = inertia_of_step(mu, step)
    if isinstance(step, OrdinaryStep):
        return AugmentationReport(
            kind="ordinary", deg_before=mu.deg, deg_after=step.phi.degree,
            tangent_degree=step.phi.degree, d=1, f=f, e_before=e_before,
            stabilization_index=None)
    family = step.family
    base_steps = family.base.steps()
    if base_steps != mu.steps():
        raise ChainError("limit step's family is not based on the given chain")
    probes = tuple(member.deg_mu(step.phi) for member in family.members())
    d = min(probes)
    idx = len(probes)
    while idx > 0 and probes[idx - 1] == d:
        idx -= 1
    if any(p != d for p in probes[idx:]) or len(probes) - idx < window:
        raise UndeterminedError(
            f"undetermined(horizon={family.horizon}): initial-term degrees "
            f"{list(probes)} do not stabilize at their minimum")
    return AugmentationReport(
        kind="limit", deg_before=mu.deg, deg_after=step.phi.degree,
        tangent_degree=mu.deg, d=d, f=f, e_before=e_before,
        stabilization_index=idx, degree_probes=probes)


def ground_group(field) -> Subgroup:
    return Subgroup(field.rank, field.group_generators())


def defect_formula(chain: Valuation, *, allow_mid_chain: bool = False,
                   declared_proper: bool = True) -> DefectReport:
    """Per-step defects and the e/f/d totals of a whole chain.

    The ramification total is the value-group index over the ground group;
    on chains declared proper it must agree with the product of per-step
    indices, and a disagreement is reported (``proper_consistent=False``).
    """
    if not chain.has_support and not allow_mid_chain:
        raise ChainError(
            "chain does not end with value infinity; pass allow_mid_chain to "
            "report on a partial chain")
    nodes = chain.nodes()
    reports = []
    for prev, node in zip(nodes, nodes[1:]):
        reports.append(defect_of_step(prev, node.step))
    d_total = 1
    f_total = 1
    ratio = Fraction(1)
    for r in reports:
        d_total *= r.d
        f_total *= r.f
        if r.kind == "limit":
            ratio *= Fraction(r.deg_after, r.deg_before)
    e_steps = tuple(_e_of(node) for node in nodes)
    e_prod = 1
    for e in e_steps:
        e_prod *= e
    e_total = chain.value_group().index_over(ground_group(chain.field))
    proper_consistent = (e_prod == e_total)
    if declared_proper and not proper_consistent:
        raise NormalizationError(
            f"chain declared proper but per-step ramification product "
            f"{e_prod} differs from the value-group index {e_total}")
    support_degree = chain.deg if chain.has_support else None
    return DefectReport(
        steps=tuple(reports), d_total=d_total, e_total=e_total,
        f_total=f_total, efd=e_total * f_total * d_total, e_steps=e_steps,
        proper_consistent=proper_consistent, limit_degree_ratio=ratio,
        support_degree=support_degree)


@dataclass(frozen=True)
class EfdSum:
    ok: bool
    total: int
    expected: int
    parts: tuple[int, ...]
    mismatches: tuple[str, ...]

    def to_json(self):
        return {
            "ok": self.ok,
            "total": self.total,
            "expected": self.expected,
            "parts": list(self.parts),
            "mismatches": list(self.mismatches),
        }


def efd_sum_check(reports: list[DefectReport], degree_of_g: int) -> EfdSum:
    """Sum of e*f*d over the given extension chains against deg(g). Exact."""
    mismatches = []
    parts = []
    for i, rep in enumerate(reports):
        if rep.support_degree is None:
            mismatches.append(
                f"report {i}: chain has trivial support (no value infinity)")
        elif rep.support_degree != degree_of_g:
            mismatches.append(
                f"report {i}: support generator degree {rep.support_degree} "
                f"!= deg g = {degree_of_g}")
        parts.append(rep.efd)
    total = sum(parts)
    ok = not mismatches and total == degree_of_g
    if total != degree_of_g:
        mismatches.append(f"sum {total} != deg g = {degree_of_g}")
    return EfdSum(ok, total, degree_of_g, tuple(parts), tuple(mismatches))


def degree_identity_check(report: DefectReport, deg_G: int) -> bool:
    """Check e*f*d == declared degree of the singled-out henselian factor.

    Only meaningful when the chain has nontrivial support (the final algebra
    is simple, so its own ramification index is 1).
    """
    return report.efd == deg_G


def henselian_product_check(report: DefectReport) -> bool:
    """d_total against the product of limit-step degree ratios.

    Equality is the henselian-case formula; scenarios assert it only when
    they declare that every limit step satisfies the henselian hypothesis.
    """
    return Fraction(report.d_total) == report.limit_degree_ratio
