"""Divergence functionals between finite discrete distributions on a shared support.

All values are in nats (KL, Renyi) or unitless (power, chi-square); natural
logarithms throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .distributions import DiscreteDistribution

# Above this ratio the power-divergence terms are evaluated in log space to avoid
# intermediate overflow of (p/q)^t at large t.
_LOG_SPACE_RATIO = 1e15


class DivergenceKind(str, Enum):
    KL = "kl"
    RENYI = "renyi"
    POWER = "power"
    CHI_SQUARE = "chi2"


@dataclass(frozen=True)
class DivergenceValue:
    value: float
    kind: DivergenceKind
    order: float | None = None

    def to_dict(self) -> dict:
        return {"value": self.value, "kind": self.kind.value, "order": self.order}


class SupportMismatchError(ValueError):
    """The two distributions do not live on the same atom set."""


class AbsoluteContinuityError(ValueError):
    """p assigns mass where q assigns none."""


def _aligned(p: DiscreteDistribution, q: DiscreteDistribution):
    """Check absolute continuity and support equality; return paired (p_i, q_i) lists.

    Absolute continuity is checked first so that disjoint or partially overlapping
    supports surface as "not absolutely continuous" rather than a bare mismatch.
    """
    q_mass = dict(zip(q.atoms, q.probs))
    for a, pa in zip(p.atoms, p.probs):
        if pa > 0 and q_mass.get(a, 0.0) == 0.0:
            raise AbsoluteContinuityError(
                f"not absolutely continuous: p has mass {pa} at atom {a} where q has none"
            )
    if p.atoms != q.atoms:
        raise SupportMismatchError("support mismatch: distributions use different atom sets")
    return list(zip(p.probs, q.probs))


def kl_divergence(p: DiscreteDistribution, q: DiscreteDistribution) -> DivergenceValue:
    """Kullback-Leibler divergence sum(p * log(p/q)), with 0*log(0/q) = 0."""
    pairs = _aligned(p, q)
    value = math.fsum(pa * math.log(pa / qa) for pa, qa in pairs if pa > 0)
    return DivergenceValue(value=value, kind=DivergenceKind.KL)


def power_divergence(p: DiscreteDistribution, q: DiscreteDistribution, t: float) -> DivergenceValue:
    """Power divergence of order t > 1: sum(((p/q)^t - 1) * q)."""
    if t <= 1:
        raise ValueError("order t must be > 1")
    pairs = _aligned(p, q)
    if p.probs == q.probs:
        return DivergenceValue(value=0.0, kind=DivergenceKind.POWER, order=t)
    terms = []
    for pa, qa in pairs:
        if pa == 0.0:
            continue  # (0/q)^t * q == 0; the -1 below absorbs q's mass
        ratio = pa / qa
        if ratio > _LOG_SPACE_RATIO:
            terms.append(math.exp(t * math.log(pa) - (t - 1.0) * math.log(qa)))
        else:
            terms.append(ratio**t * qa)
    return DivergenceValue(value=math.fsum(terms) - 1.0, kind=DivergenceKind.POWER, order=t)


def chi_square_divergence(p: DiscreteDistribution, q: DiscreteDistribution) -> DivergenceValue:
    """Chi-square divergence; identical to the power divergence at t = 2."""
    inner = power_divergence(p, q, 2.0)
    return DivergenceValue(value=inner.value, kind=DivergenceKind.CHI_SQUARE, order=2.0)


def renyi_divergence(p: DiscreteDistribution, q: DiscreteDistribution, alpha: float) -> DivergenceValue:
    """Renyi divergence of order alpha >= 1; alpha = 1 is the KL limit.

    For alpha > 1 this is log(power_divergence + 1) / (alpha - 1).
    """
    if alpha < 1:
        raise ValueError("order alpha must be >= 1")
    if alpha == 1:
        return DivergenceValue(value=kl_divergence(p, q).value, kind=DivergenceKind.RENYI, order=1.0)
    inner = power_divergence(p, q, alpha)
    return DivergenceValue(
        value=math.log1p(inner.value) / (alpha - 1.0), kind=DivergenceKind.RENYI, order=alpha
    )
