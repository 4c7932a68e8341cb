"""Losses, risks, and moments of the generalization error.

The generalization error of a hypothesis w trained on sample s is
``gen(w, s) = population_risk(w) - empirical_risk(w, s)``.  Moments of gen under
the joint law of (W, S) are computed two ways: exact enumeration over a discrete
source, and chunked Monte Carlo over either source kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.special import ndtr

from .distributions import (
    DEFAULT_ENUMERATION_CAP,
    DiscreteDistribution,
    GaussianSpec,
    enumerate_multisets,
    enumerate_training_sets,
    require_enumerable,
)
from .kernels import LearningKernel

MC_CHUNK_SIZE = 65536

DataSource = Union[DiscreteDistribution, GaussianSpec]


@dataclass(frozen=True, eq=False)
class LossSpec:
    """A bounded loss with range [0, upper_bound]."""

    kind: str
    upper_bound: float
    evaluate: Callable[[float, float], float]
    evaluate_array: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    params: dict | None = None

    @property
    def sigma(self) -> float:
        """Subgaussian parameter of a loss bounded in [0, upper_bound]."""
        return self.upper_bound / 2.0


def truncated_square_loss(c: float) -> LossSpec:
    """min((w - z)^2, c^2): squared error clipped at c^2, hence bounded."""
    if c <= 0:
        raise ValueError("truncation level c must be positive")
    c2 = c * c

    def evaluate(w: float, z: float) -> float:
        return min((w - z) ** 2, c2)

    def evaluate_array(w: np.ndarray, z: np.ndarray) -> np.ndarray:
        return np.minimum((w - z) ** 2, c2)

    return LossSpec(
        kind="truncated_square",
        upper_bound=c2,
        evaluate=evaluate,
        evaluate_array=evaluate_array,
        params={"c": c},
    )


@dataclass(frozen=True, eq=False)
class LearningModel:
    """Data source, sample size, learning kernel, and loss, bundled."""

    data: DataSource
    n: int
    kernel: LearningKernel
    loss: LossSpec
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("sample size n must be >= 1")


class MomentMethod(str, Enum):
    EXACT = "exact"
    MONTE_CARLO = "mc"


@dataclass(frozen=True)
class MomentEstimate:
    order: int
    value: float
    method: MomentMethod
    stderr: float = 0.0
    samples: int | None = None
    warning: str | None = None

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "value": self.value,
            "method": self.method.value,
            "stderr": self.stderr,
            "samples": self.samples,
            "warning": self.warning,
        }


def _gaussian_truncsq_risk(w, g: GaussianSpec, c: float):
    """Closed-form E[min((w - Z)^2, c^2)] for Z ~ N(mean, variance).

    With D = w - Z ~ N(mu, s^2), standardized to U on [a, b] = [(-c-mu)/s, (c-mu)/s]:
    E[D^2; |D|<=c] = (mu^2+s^2) P_in + 2 mu s (phi(a)-phi(b)) + s^2 (a phi(a) - b phi(b)).
    """
    mu = np.asarray(w, dtype=float) - g.mean
    s = g.std
    a = (-c - mu) / s
    b = (c - mu) / s
    phi_a = np.exp(-0.5 * a * a) / math.sqrt(2 * math.pi)
    phi_b = np.exp(-0.5 * b * b) / math.sqrt(2 * math.pi)
    p_in = ndtr(b) - ndtr(a)
    e_trunc = (mu * mu + s * s) * p_in + 2 * mu * s * (phi_a - phi_b) + s * s * (a * phi_a - b * phi_b)
    return e_trunc + c * c * (1.0 - p_in)


def population_risk(loss: LossSpec, data: DataSource, w: float) -> float:
    """Expected loss of hypothesis w under the data source."""
    if isinstance(data, DiscreteDistribution):
        return math.fsum(p * loss.evaluate(w, z) for z, p in zip(data.atoms, data.probs))
    if isinstance(data, GaussianSpec):
        if loss.kind == "truncated_square":
            return float(_gaussian_truncsq_risk(w, data, loss.params["c"]))
        raise ValueError(f"no exact population risk evaluator for loss {loss.kind!r} under a Gaussian source")
    raise ValueError(f"unsupported data source {type(data)!r}")


def population_risk_array(loss: LossSpec, data: DataSource, ws: np.ndarray) -> np.ndarray:
    """Vectorized population risk over an array of hypothesis values."""
    ws = np.asarray(ws, dtype=float)
    if isinstance(data, DiscreteDistribution):
        if loss.evaluate_array is not None:
            table = loss.evaluate_array(ws[:, None], data.atoms_array()[None, :])
            return table @ data.probs_array()
        return np.array([population_risk(loss, data, w) for w in ws])
    if isinstance(data, GaussianSpec):
        if loss.kind == "truncated_square":
            return _gaussian_truncsq_risk(ws, data, loss.params["c"])
        raise ValueError(f"no exact population risk evaluator for loss {loss.kind!r} under a Gaussian source")
    raise ValueError(f"unsupported data source {type(data)!r}")


def empirical_risk(loss: LossSpec, w: float, values: Sequence[float]) -> float:
    """Average loss of hypothesis w on the given training values."""
    if len(values) == 0:
        raise ValueError("empty training sample")
    return math.fsum(loss.evaluate(w, z) for z in values) / len(values)


def gen_value(model: LearningModel, w: float, values: Sequence[float]) -> float:
    """Generalization error of one (hypothesis, training set) pair."""
    return population_risk(model.loss, model.data, w) - empirical_risk(model.loss, w, values)


def _training_groups(model: LearningModel, cap: int):
    """Yield (values, probability) pairs covering the training-set law exactly."""
    d = model.data
    require_enumerable(d.support_size, model.n, cap)
    if model.kernel.permutation_invariant:
        yield from enumerate_multisets(d, model.n)
    else:
        for r in enumerate_training_sets(d, model.n, cap):
            yield r.values(d), r.prob


def enumerate_gen_values(model: LearningModel, cap: int = DEFAULT_ENUMERATION_CAP):
    """Yield (gen, probability) pairs covering the exact joint law of (W, S)."""
    if not isinstance(model.data, DiscreteDistribution):
        raise ValueError("exact enumeration requires a discrete data source")
    risk_cache: dict[float, float] = {}
    for values, p_s in _training_groups(model, cap):
        cond = model.kernel.conditional(values)
        for w, pw in zip(cond.atoms, cond.probs):
            if w not in risk_cache:
                risk_cache[w] = population_risk(model.loss, model.data, w)
            yield risk_cache[w] - empirical_risk(model.loss, w, values), p_s * pw


def gen_moments_exact(
    model: LearningModel,
    orders: Sequence[int],
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> dict[int, MomentEstimate]:
    """Exact moments E[gen^m] for several orders m over one enumeration pass."""
    orders = [int(m) for m in orders]
    if any(m < 1 for m in orders):
        raise ValueError("moment orders must be >= 1")
    terms: dict[int, list[float]] = {m: [] for m in orders}
    for gen, weight in enumerate_gen_values(model, cap):
        for m in orders:
            terms[m].append(weight * gen**m)
    return {
        m: MomentEstimate(order=m, value=math.fsum(terms[m]), method=MomentMethod.EXACT)
        for m in orders
    }


def exact_tail_mass(model: LearningModel, threshold: float, cap: int = DEFAULT_ENUMERATION_CAP) -> float:
    """Exact probability that |gen| exceeds the threshold, by full enumeration."""
    return math.fsum(p for gen, p in enumerate_gen_values(model, cap) if abs(gen) > threshold)


def gen_moment_exact(model: LearningModel, m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> MomentEstimate:
    """Exact m-th moment of the generalization error by full enumeration."""
    return gen_moments_exact(model, [m], cap)[m]


def _seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def _sample_chunk(model: LearningModel, size: int, rng: np.random.Generator) -> np.ndarray:
    data, kernel, loss = model.data, model.kernel, model.loss
    if isinstance(data, GaussianSpec):
        z = rng.normal(data.mean, data.std, size=(size, model.n))
    else:
        z = rng.choice(data.atoms_array(), size=(size, model.n), p=data.probs_array())
    if kernel.point_map_array is not None:
        ws = kernel.point_map_array(z)
    elif kernel.sample_array is not None:
        ws = kernel.sample_array(z, rng)
    elif kernel.deterministic:
        ws = np.array([kernel.point_map(tuple(row)) for row in z])
    else:
        ws = np.empty(size)
        for i, row in enumerate(z):
            cond = kernel.conditional(tuple(row))
            if cond.support_size == 1:
                ws[i] = cond.atoms[0]
            else:
                ws[i] = rng.choice(cond.atoms_array(), p=cond.probs_array())
    if loss.evaluate_array is not None:
        emp = loss.evaluate_array(ws[:, None], z).mean(axis=1)
    else:
        emp = np.array([empirical_risk(loss, w, row) for w, row in zip(ws, z)])
    return population_risk_array(loss, data, ws) - emp


def sample_gen_values(
    model: LearningModel,
    replicates: int,
    seed,
    chunk_size: int = MC_CHUNK_SIZE,
) -> np.ndarray:
    """Draw i.i.d. generalization-error values.

    Replicates are generated in fixed-size chunks, each from its own child of the
    seed sequence, so the output depends only on (seed, replicates, chunk_size).
    """
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    n_chunks = -(-replicates // chunk_size)
    children = _seed_sequence(seed).spawn(n_chunks)
    out = np.empty(replicates)
    for i, child in enumerate(children):
        lo = i * chunk_size
        hi = min(lo + chunk_size, replicates)
        out[lo:hi] = _sample_chunk(model, hi - lo, np.random.default_rng(child))
    return out


def gen_moments_mc(
    model: LearningModel,
    orders: Sequence[int],
    replicates: int,
    seed,
    chunk_size: int = MC_CHUNK_SIZE,
) -> dict[int, MomentEstimate]:
    """Monte Carlo moments for several orders, sharing one set of draws."""
    orders = [int(m) for m in orders]
    if any(m < 1 for m in orders):
        raise ValueError("moment orders must be >= 1")
    gen = sample_gen_values(model, replicates, seed, chunk_size)
    result = {}
    for m in orders:
        powered = gen**m
        value = float(powered.mean())
        if replicates > 1:
            stderr, warning = float(powered.std(ddof=1) / math.sqrt(replicates)), None
        else:
            stderr, warning = 0.0, "single replicate: stderr unavailable"
        result[m] = MomentEstimate(
            order=m, value=value, method=MomentMethod.MONTE_CARLO,
            stderr=stderr, samples=replicates, warning=warning,
        )
    return result


def gen_moment_mc(
    model: LearningModel,
    m: int,
    replicates: int,
    seed,
    chunk_size: int = MC_CHUNK_SIZE,
) -> MomentEstimate:
    """Monte Carlo estimate of E[gen^m] with a standard error."""
    return gen_moments_mc(model, [m], replicates, seed, chunk_size)[m]


def gen_quantile_mc(
    model: LearningModel,
    delta: float,
    replicates: int,
    seed,
    chunk_size: int = MC_CHUNK_SIZE,
) -> float:
    """Empirical (1 - delta)-quantile of |gen|, for checking tail bounds."""
    if not 0 < delta <= 1:
        raise ValueError("delta must be in (0, 1]")
    abs_gen = np.abs(sample_gen_values(model, replicates, seed, chunk_size))
    k = max(1, math.ceil((1.0 - delta) * replicates))
    return float(np.partition(abs_gen, k - 1)[k - 1])


def subgaussian_abs_moment_bound(sigma: float, k: int) -> float:
    """Upper bound sigma^k * k^(k/2) * e^(k/e) on E|X|^k for sigma-subgaussian X, k >= 2."""
    if k < 2:
        raise ValueError("moment order k must be >= 2")
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    return sigma**k * k ** (k / 2.0) * math.exp(k / math.e)
