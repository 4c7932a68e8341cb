"""Finite discrete distributions, Gaussian quantization, and i.i.d. product-space tools."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np
from scipy.special import ndtr

ATOM_MERGE_DIGITS = 12
DEFAULT_ENUMERATION_CAP = 10_000_000
# Tail mass beyond 4 sigma (< 7e-5) is below every working tolerance in this package.
DEFAULT_RANGE_SIGMAS = 4.0


class EnumerationCapError(ValueError):
    """Raised when an exact enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite distribution: strictly increasing atoms, probabilities summing to one."""

    atoms: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.probs):
            raise ValueError("atoms and probs must have equal length")
        if not self.atoms:
            raise ValueError("empty distribution")
        if any(p < 0 for p in self.probs):
            raise ValueError("negative probability")
        if any(b <= a for a, b in zip(self.atoms, self.atoms[1:])):
            raise ValueError("atoms must be strictly increasing")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")

    @property
    def support_size(self) -> int:
        return len(self.atoms)

    def atoms_array(self) -> np.ndarray:
        return np.asarray(self.atoms, dtype=float)

    def probs_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    def mean(self) -> float:
        return math.fsum(a * p for a, p in zip(self.atoms, self.probs))

    def to_dict(self) -> dict:
        return {"atoms": list(self.atoms), "probs": list(self.probs)}

    @classmethod
    def from_dict(cls, data: dict) -> "DiscreteDistribution":
        return make_discrete(data["atoms"], data["probs"])


@dataclass(frozen=True)
class GaussianSpec:
    """Gaussian data law (mean, variance > 0)."""

    mean: float
    variance: float

    def __post_init__(self):
        if self.variance <= 0:
            raise ValueError("variance must be positive")

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    def to_dict(self) -> dict:
        return {"mean": self.mean, "variance": self.variance}


DataDistribution = Union[DiscreteDistribution, GaussianSpec]


@dataclass(frozen=True)
class TrainingSetRealization:
    """One ordered i.i.d. draw of n atoms, by index, with its product probability."""

    indices: tuple[int, ...]
    prob: float

    def values(self, d: DiscreteDistribution) -> tuple[float, ...]:
        return tuple(d.atoms[i] for i in self.indices)


def make_discrete(atoms, probs) -> DiscreteDistribution:
    """Build a canonical distribution: sorted atoms, duplicates merged, probs renormalized.

    Atom values are rounded to ``ATOM_MERGE_DIGITS`` decimals before the duplicate
    merge so floating-point noise cannot split one atom into two.
    """
    atoms = list(atoms)
    probs = list(probs)
    if len(atoms) != len(probs):
        raise ValueError("atoms and probs must have equal length")
    if not atoms:
        raise ValueError("empty input")
    if any(p < 0 for p in probs):
        raise ValueError("negative probability")
    total = math.fsum(probs)
    if total <= 0:
        raise ValueError("all-zero probabilities")
    merged: dict[float, list[float]] = {}
    for a, p in zip(atoms, probs):
        key = round(float(a), ATOM_MERGE_DIGITS) + 0.0  # normalize -0.0
        merged.setdefault(key, []).append(float(p))
    ordered = sorted(merged.items())
    return DiscreteDistribution(
        atoms=tuple(a for a, _ in ordered),
        probs=tuple(math.fsum(ps) / total for _, ps in ordered),
    )


def quantize_gaussian(
    g: GaussianSpec, bins: int, range_sigmas: float = DEFAULT_RANGE_SIGMAS
) -> DiscreteDistribution:
    """Quantize a Gaussian onto ``bins`` equal-width bins over mean +/- range_sigmas*std.

    Atoms are bin midpoints; each atom's probability is the Gaussian CDF mass of its
    bin, renormalized over the retained range.
    """
    if bins < 2:
        raise ValueError("bins must be >= 2")
    if range_sigmas <= 0:
        raise ValueError("range_sigmas must be positive")
    half_width = range_sigmas * g.std
    edges = np.linspace(g.mean - half_width, g.mean + half_width, bins + 1)
    cdf = ndtr((edges - g.mean) / g.std)
    masses = np.diff(cdf)
    mids = 0.5 * (edges[:-1] + edges[1:])
    return make_discrete(mids, masses)


def require_enumerable(support_size: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Return support_size**n, or raise EnumerationCapError naming the offending count."""
    count = support_size**n
    if count > cap:
        raise EnumerationCapError(
            f"enumeration too large: K^n = {support_size}^{n} = {count} exceeds cap {cap}"
        )
    return count


def enumerate_training_sets(
    d: DiscreteDistribution, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[TrainingSetRealization]:
    """Yield every ordered n-tuple over the support, with its i.i.d. product probability."""
    if n < 1:
        raise ValueError("n must be >= 1")
    require_enumerable(d.support_size, n, cap)
    for indices in itertools.product(range(d.support_size), repeat=n):
        prob = math.prod(d.probs[i] for i in indices)
        yield TrainingSetRealization(indices=indices, prob=prob)


def enumerate_multisets(d: DiscreteDistribution, n: int) -> Iterator[tuple[tuple[float, ...], float]]:
    """Yield (sorted value tuple, total probability) per multiset of n i.i.d. draws.

    The total probability folds in the multinomial multiplicity, so the yielded
    probabilities sum to 1.  Exact replacement for full ordered enumeration whenever
    every downstream quantity is permutation-invariant in the training set.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    for combo in itertools.combinations_with_replacement(range(d.support_size), n):
        counts: dict[int, int] = {}
        for i in combo:
            counts[i] = counts.get(i, 0) + 1
        mult = math.factorial(n)
        prob = 1.0
        for i, c in counts.items():
            mult //= math.factorial(c)
            prob *= d.probs[i] ** c
        yield tuple(d.atoms[i] for i in combo), mult * prob


def sample_iid(data: DataDistribution, n: int, seed: int) -> np.ndarray:
    """Draw n i.i.d. values; deterministic for a given seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    if isinstance(data, GaussianSpec):
        return rng.normal(data.mean, data.std, size=n)
    return rng.choice(data.atoms_array(), size=n, p=data.probs_array())
