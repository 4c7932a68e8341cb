"""Information-theoretic bounds on generalization-error moments and tails.

Every bound evaluator returns a BoundReport carrying the numeric value, the
parameters used, and the truth value of each side condition.  A failed side
condition never raises: callers (plots, sweeps) need the value either way, with
``valid`` flagging whether the chosen validity mode endorses it.

Two validity modes are supported throughout.  "strict" enforces the side
conditions exactly as stated (integrality included); "relaxed" drops the
integrality requirements and accepts the boundary m*q = 2, which the m = 1
chi-square instantiations need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .distributions import DEFAULT_ENUMERATION_CAP, DiscreteDistribution
from .information import (
    DEFAULT_W_ROUND_DIGITS,
    build_joint,
    power_information,
    _round_conditional,
)
from .risk import LearningModel, _training_groups, empirical_risk, population_risk

EXP_1_OVER_E = math.exp(1.0 / math.e)
EXP_1_OVER_E_PLUS_HALF = math.exp(1.0 / math.e + 0.5)

VALIDITY_MODES = ("strict", "relaxed")
_INT_TOL = 1e-9


def _is_positive_integer(x: float) -> bool:
    return x >= 1.0 - _INT_TOL and abs(x - round(x)) <= _INT_TOL


@dataclass(frozen=True)
class BoundCondition:
    """One side condition; scope says which validity mode enforces it."""

    name: str
    satisfied: bool
    scope: str = "both"  # "both" | "strict" | "relaxed"

    def to_dict(self) -> dict:
        return {"name": self.name, "satisfied": self.satisfied, "scope": self.scope}


@dataclass(frozen=True)
class BoundReport:
    theorem: str
    value: float
    parameters: dict
    conditions: tuple[BoundCondition, ...]
    mode: str = "relaxed"

    def __post_init__(self):
        if self.mode not in VALIDITY_MODES:
            raise ValueError(f"unknown validity mode {self.mode!r}")

    @property
    def valid_strict(self) -> bool:
        return all(c.satisfied for c in self.conditions if c.scope in ("both", "strict"))

    @property
    def valid_relaxed(self) -> bool:
        return all(c.satisfied for c in self.conditions if c.scope in ("both", "relaxed"))

    @property
    def valid(self) -> bool:
        return self.valid_strict if self.mode == "strict" else self.valid_relaxed

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "value": self.value,
            "parameters": self.parameters,
            "conditions": [c.to_dict() for c in self.conditions],
            "mode": self.mode,
            "valid": self.valid,
            "valid_strict": self.valid_strict,
            "valid_relaxed": self.valid_relaxed,
        }


def _check_base(sigma: float, n: int) -> None:
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if n < 1:
        raise ValueError("sample size n must be >= 1")


def _check_order(m: int) -> int:
    if m != int(m) or m < 1:
        raise ValueError("moment order m must be a positive integer")
    return int(m)


def _check_info(info: float, name: str = "information value") -> None:
    if info < 0:
        raise ValueError(f"{name} must be nonnegative")


def _check_delta(delta: float) -> None:
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")


def _mq_conditions(mq: float) -> tuple[BoundCondition, ...]:
    return (
        BoundCondition("m*q > 2", mq > 2.0, "strict"),
        BoundCondition("m*q is a positive integer", _is_positive_integer(mq), "strict"),
        BoundCondition("m*q >= 2", mq >= 2.0 - _INT_TOL, "relaxed"),
    )


def _beta_conditions(beta: float) -> tuple[BoundCondition, ...]:
    return (
        BoundCondition("beta > 2", beta > 2.0, "both"),
        BoundCondition("beta is a positive integer", _is_positive_integer(beta), "strict"),
    )


def moment_bound_power(sigma, n, m, t, info_power, mode="relaxed") -> BoundReport:
    """m-th absolute moment bound from power information of order t.

    value = sigma^m (mq/n)^(m/2) e^(m/e) (info_power + 1)^(1/t), q conjugate to t.
    """
    _check_base(sigma, n)
    m = _check_order(m)
    if t <= 1:
        raise ValueError("order t must be > 1")
    _check_info(info_power, "power information")
    q = t / (t - 1.0)
    mq = m * q
    value = sigma**m * (mq / n) ** (m / 2.0) * math.exp(m / math.e) * (info_power + 1.0) ** (1.0 / t)
    conditions = (
        BoundCondition("t > 1", t > 1.0),
        BoundCondition("q > 1", q > 1.0),
    ) + _mq_conditions(mq)
    return BoundReport(
        theorem="thm2",
        value=value,
        parameters={"sigma": sigma, "n": n, "m": m, "t": t, "q": q, "info_value": info_power},
        conditions=conditions,
        mode=mode,
    )


def moment_bound_chi2(sigma, n, m, info_chi2, mode="relaxed") -> BoundReport:
    """m-th absolute moment bound from chi-square information (order-2 case)."""
    _check_base(sigma, n)
    m = _check_order(m)
    _check_info(info_chi2, "chi-square information")
    value = sigma**m * (2.0 * m / n) ** (m / 2.0) * math.exp(m / math.e) * math.sqrt(info_chi2 + 1.0)
    return BoundReport(
        theorem="cor1",
        value=value,
        parameters={"sigma": sigma, "n": n, "m": m, "t": 2.0, "q": 2.0, "info_value": info_chi2},
        conditions=_mq_conditions(2.0 * m),
        mode=mode,
    )


def expected_gen_bound(sigma, n, q, info_power, mode="relaxed") -> BoundReport:
    """Bound on |E[gen]| from power information of the conjugate order t = q/(q-1)."""
    _check_base(sigma, n)
    if q <= 1:
        raise ValueError("exponent q must be > 1")
    _check_info(info_power, "power information")
    t = q / (q - 1.0)
    value = sigma * math.sqrt(q / n) * EXP_1_OVER_E * (info_power + 1.0) ** (1.0 / t)
    conditions = (
        BoundCondition("q >= 2", q >= 2.0 - _INT_TOL),
        BoundCondition("q is a positive integer", _is_positive_integer(q)),
    )
    return BoundReport(
        theorem="cor2",
        value=value,
        parameters={"sigma": sigma, "n": n, "m": 1, "t": t, "q": q, "info_value": info_power},
        conditions=conditions,
        mode=mode,
    )


def moment_bound_ratio(sigma, n, m, max_ratio, mode="relaxed") -> BoundReport:
    """m-th moment bound using only the largest conditional-to-marginal ratio R."""
    _check_base(sigma, n)
    m = _check_order(m)
    if max_ratio < 1.0 - _INT_TOL:
        raise ValueError("max density ratio must be >= 1")
    value = sigma**m * (2.0 * m / n) ** (m / 2.0) * math.exp(m / math.e) * max_ratio
    conditions = _mq_conditions(2.0 * m) + (
        BoundCondition("R >= 1", max_ratio >= 1.0 - _INT_TOL),
    )
    return BoundReport(
        theorem="eq9",
        value=value,
        parameters={"sigma": sigma, "n": n, "m": m, "max_ratio": max_ratio},
        conditions=conditions,
        mode=mode,
    )


def second_moment_bound_mi(sigma, n, mi, mode="relaxed") -> BoundReport:
    """Second-moment bound linear in the mutual information: (sigma^2/n)(16 mi + 9)."""
    _check_base(sigma, n)
    _check_info(mi, "mutual information")
    value = (sigma * sigma / n) * (16.0 * mi + 9.0)
    return BoundReport(
        theorem="thm3",
        value=value,
        parameters={"sigma": sigma, "n": n, "m": 2, "info_value": mi},
        conditions=(),
        mode=mode,
    )


def highprob_bound_power(sigma, n, t, delta, info_power, mode="relaxed") -> BoundReport:
    """Single-draw tail bound: |gen| below the value with probability >= 1 - delta."""
    _check_base(sigma, n)
    if t <= 1:
        raise ValueError("order t must be > 1")
    _check_delta(delta)
    _check_info(info_power, "power information")
    beta = (math.log1p(info_power) - t * math.log(delta)) / (t - 1.0)
    value = (
        EXP_1_OVER_E_PLUS_HALF
        * math.sqrt(2.0 * t * sigma * sigma / (n * (t - 1.0)))
        * math.sqrt(math.log1p(info_power) / t + math.log(1.0 / delta))
    )
    return BoundReport(
        theorem="thm4",
        value=value,
        parameters={
            "sigma": sigma, "n": n, "t": t, "q": t / (t - 1.0),
            "delta": delta, "beta": beta, "info_value": info_power,
        },
        conditions=_beta_conditions(beta),
        mode=mode,
    )


def highprob_bound_renyi(sigma, n, alpha, delta, d_alpha, mode="relaxed") -> BoundReport:
    """Single-draw tail bound driven by a Renyi information value of order alpha."""
    _check_base(sigma, n)
    if alpha <= 1:
        raise ValueError("order alpha must be > 1")
    _check_delta(delta)
    _check_info(d_alpha, "Renyi information")
    beta = alpha / (alpha - 1.0) * math.log(1.0 / delta) + d_alpha
    value = EXP_1_OVER_E_PLUS_HALF * math.sqrt(2.0 * sigma * sigma * (d_alpha + math.log(1.0 / delta)) / n)
    return BoundReport(
        theorem="eq12",
        value=value,
        parameters={
            "sigma": sigma, "n": n, "alpha": alpha,
            "delta": delta, "beta": beta, "info_value": d_alpha,
        },
        conditions=_beta_conditions(beta),
        mode=mode,
    )


def highprob_bound_chi2(sigma, n, delta, info_chi2, mode="relaxed") -> BoundReport:
    """Single-draw tail bound from chi-square information (order-2 case)."""
    _check_base(sigma, n)
    _check_delta(delta)
    _check_info(info_chi2, "chi-square information")
    beta = math.log1p(info_chi2) - 2.0 * math.log(delta)
    value = (
        EXP_1_OVER_E_PLUS_HALF
        * 2.0
        * sigma
        * math.sqrt((math.log(math.sqrt(info_chi2 + 1.0)) + math.log(1.0 / delta)) / n)
    )
    return BoundReport(
        theorem="cor3",
        value=value,
        parameters={"sigma": sigma, "n": n, "t": 2.0, "delta": delta, "beta": beta, "info_value": info_chi2},
        conditions=_beta_conditions(beta),
        mode=mode,
    )


@dataclass(frozen=True)
class PowerChiComparison:
    """When the power information exceeds the threshold, the chi-square moment
    bound is at least as tight as the power-information bound of order t."""

    m: int
    t: float
    info_power: float
    threshold: float
    base: float
    exponent: float
    holds: bool
    order_condition: BoundCondition

    def to_dict(self) -> dict:
        return {
            "m": self.m, "t": self.t, "info_power": self.info_power,
            "threshold": self.threshold, "base": self.base, "exponent": self.exponent,
            "holds": self.holds, "order_condition": self.order_condition.to_dict(),
        }


def compare_power_vs_chi2(m, t, info_power) -> PowerChiComparison:
    """Tightness test: chi-square bound beats the order-t power bound when
    info_power >= (2(t-1)/t)^(m t (t-1)/(t-2)) - 1."""
    m = _check_order(m)
    if t <= 2:
        raise ValueError("order t must be > 2")
    _check_info(info_power, "power information")
    base = 2.0 * (t - 1.0) / t
    exponent = m * t * (t - 1.0) / (t - 2.0)
    threshold = base**exponent - 1.0
    mt_ratio = m * t / (t - 1.0)
    return PowerChiComparison(
        m=m,
        t=t,
        info_power=info_power,
        threshold=threshold,
        base=base,
        exponent=exponent,
        holds=info_power >= threshold,
        order_condition=BoundCondition("m*t/(t-1) is a positive integer", _is_positive_integer(mt_ratio)),
    )


def _chi2_mi_lhs(x: float) -> float:
    return 16.0 * math.log1p(x) + 9.0


def _chi2_mi_rhs(x: float) -> float:
    return 4.0 * EXP_1_OVER_E * EXP_1_OVER_E * math.sqrt(x + 1.0)


@lru_cache(maxsize=1)
def chi2_mi_crossover(lo: float = 90.0, hi: float = 100.0) -> float:
    """Bisect for the chi-square information level where the second-moment
    chi-square bound stops being tighter than the mutual-information one."""
    f = lambda x: _chi2_mi_rhs(x) - _chi2_mi_lhs(x)
    if not f(lo) < 0 < f(hi):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


CHI2_MI_STATED_THRESHOLD = 94.0


@dataclass(frozen=True)
class ChiMiComparison:
    """When it holds, the mutual-information second-moment bound is at least as
    tight as the chi-square one (via mi <= log(info_chi2 + 1))."""

    info_chi2: float
    lhs: float
    rhs: float
    holds: bool
    stated_threshold: float
    exact_crossover: float
    margin_at_stated: float  # rhs - lhs at the stated threshold; negative: fails there

    def to_dict(self) -> dict:
        return {
            "info_chi2": self.info_chi2, "lhs": self.lhs, "rhs": self.rhs,
            "holds": self.holds, "stated_threshold": self.stated_threshold,
            "exact_crossover": self.exact_crossover,
            "margin_at_stated": self.margin_at_stated,
        }


def compare_chi2_vs_mi(info_chi2) -> ChiMiComparison:
    """Tightness test at moment order 2: 16 log(x+1) + 9 <= 4 e^(2/e) sqrt(x+1)."""
    _check_info(info_chi2, "chi-square information")
    lhs = _chi2_mi_lhs(info_chi2)
    rhs = _chi2_mi_rhs(info_chi2)
    stated = CHI2_MI_STATED_THRESHOLD
    return ChiMiComparison(
        info_chi2=info_chi2,
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs,
        stated_threshold=stated,
        exact_crossover=chi2_mi_crossover(),
        margin_at_stated=_chi2_mi_rhs(stated) - _chi2_mi_lhs(stated),
    )


def verify_theorem1(
    model: LearningModel,
    F,
    t: float,
    cap: int = DEFAULT_ENUMERATION_CAP,
    w_round_digits: int = DEFAULT_W_ROUND_DIGITS,
) -> tuple[float, float]:
    """Evaluate both sides of the change-of-measure inequality for a test function.

    F maps (population risk, empirical risk) to a real.  Returns
    (|E_joint[F]|, E_product[|F|^q]^(1/q) * (info_power(t) + 1)^(1/t)); the first
    never exceeds the second, which tests assert numerically.
    """
    if t <= 1:
        raise ValueError("order t must be > 1")
    if not isinstance(model.data, DiscreteDistribution):
        raise ValueError("exact verification requires a discrete data source")
    q = t / (t - 1.0)
    groups = []
    for values, p_s in _training_groups(model, cap):
        cond = _round_conditional(model.kernel.conditional(values), w_round_digits)
        groups.append((values, p_s, cond))
    w_probs: dict[float, float] = {}
    for _, p_s, cond in groups:
        for w, pw in zip(cond.atoms, cond.probs):
            w_probs[w] = w_probs.get(w, 0.0) + p_s * pw
    pop_risk = {w: population_risk(model.loss, model.data, w) for w in w_probs}
    joint_terms = []
    prod_terms = []
    for values, p_s, cond in groups:
        f_row = {
            w: F(pop_risk[w], empirical_risk(model.loss, w, values)) for w in w_probs
        }
        for w, pw in zip(cond.atoms, cond.probs):
            joint_terms.append(p_s * pw * f_row[w])
        for w, p_w in w_probs.items():
            prod_terms.append(p_s * p_w * abs(f_row[w]) ** q)
    lhs = abs(math.fsum(joint_terms))
    info = power_information(build_joint(model.data, model.n, model.kernel, w_round_digits, cap), t)
    rhs = math.fsum(prod_terms) ** (1.0 / q) * (info.value + 1.0) ** (1.0 / t)
    return lhs, rhs
