"""Learning kernels: Markov maps from training-set realizations to hypothesis laws."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .distributions import DiscreteDistribution, make_discrete

Conditional = Callable[[Sequence[float]], DiscreteDistribution]


@dataclass(frozen=True)
class LearningKernel:
    """Randomized learning algorithm: ``conditional`` maps training values to a hypothesis law.

    ``permutation_invariant`` enables exact multiset enumeration shortcuts.
    ``point_map_array`` is an optional vectorized fast path for deterministic kernels,
    mapping an (N, n) matrix of training values to N hypothesis values.
    ``sample_array`` is the randomized counterpart: given the value matrix and a
    generator it draws one hypothesis per row.
    """

    conditional: Conditional
    permutation_invariant: bool = False
    point_map: Optional[Callable[[Sequence[float]], float]] = None
    point_map_array: Optional[Callable[[np.ndarray], np.ndarray]] = None
    sample_array: Optional[Callable[[np.ndarray, np.random.Generator], np.ndarray]] = None
    name: str = "custom"

    @property
    def deterministic(self) -> bool:
        return self.point_map is not None


def deterministic_kernel(
    fn: Callable[[Sequence[float]], float],
    fn_array: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    permutation_invariant: bool = False,
    name: str = "deterministic",
) -> LearningKernel:
    """Wrap a point estimator as a kernel returning a unit mass at fn(s)."""

    def conditional(s: Sequence[float]) -> DiscreteDistribution:
        return make_discrete([fn(s)], [1.0])

    return LearningKernel(
        conditional=conditional,
        permutation_invariant=permutation_invariant,
        point_map=fn,
        point_map_array=fn_array,
        name=name,
    )


def mean_kernel() -> LearningKernel:
    """Empirical-mean estimator, the risk minimizer for squared losses."""
    return deterministic_kernel(
        fn=lambda s: float(np.mean(s)),
        fn_array=lambda values: values.mean(axis=1),
        permutation_invariant=True,
        name="mean",
    )


def constant_kernel(w0: float) -> LearningKernel:
    """Kernel that ignores the training set entirely."""
    return deterministic_kernel(
        fn=lambda s: float(w0),
        fn_array=lambda values: np.full(values.shape[0], float(w0)),
        permutation_invariant=True,
        name="constant",
    )


def first_sample_kernel() -> LearningKernel:
    """Hypothesis equals the first training value; injective on single-sample sets."""
    return deterministic_kernel(
        fn=lambda s: float(s[0]),
        fn_array=lambda values: values[:, 0].copy(),
        permutation_invariant=False,
        name="first_sample",
    )


def indexing_kernel(d: DiscreteDistribution) -> LearningKernel:
    """Assign each training tuple over d's atoms a distinct integer hypothesis.

    Injective on the enumerated training space, which makes the joint diagonal:
    useful for exercising the high-information regime.
    """
    index = {a: i for i, a in enumerate(d.atoms)}
    base = d.support_size

    def fn(s: Sequence[float]) -> float:
        code = 0
        for v in s:
            code = code * base + index[float(v)]
        return float(code)

    def fn_array(values: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(d.atoms_array(), values)
        weights = base ** np.arange(values.shape[1] - 1, -1, -1)
        return (idx @ weights).astype(float)

    return deterministic_kernel(fn, fn_array, permutation_invariant=False, name="indexing")


def noisy_mean_kernel(noise_atoms: Sequence[float], noise_probs: Sequence[float]) -> LearningKernel:
    """Randomized kernel: empirical mean plus independent discrete noise."""
    noise = make_discrete(noise_atoms, noise_probs)

    def conditional(s: Sequence[float]) -> DiscreteDistribution:
        center = float(np.mean(s))
        return make_discrete([center + a for a in noise.atoms], noise.probs)

    def sample_array(values: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        draws = rng.choice(noise.atoms_array(), size=values.shape[0], p=noise.probs_array())
        return values.mean(axis=1) + draws

    return LearningKernel(
        conditional=conditional,
        permutation_invariant=True,
        sample_array=sample_array,
        name="noisy_mean",
    )


def kernel_from_spec(spec: dict) -> LearningKernel:
    """Materialize a kernel from its JSON description (CLI and service model files)."""
    kind = spec.get("type")
    if kind == "mean":
        return mean_kernel()
    if kind == "constant":
        if "value" not in spec:
            raise ValueError("constant kernel requires a 'value'")
        return constant_kernel(float(spec["value"]))
    if kind == "first_sample":
        return first_sample_kernel()
    if kind == "noisy_mean":
        return noisy_mean_kernel(spec["noise_atoms"], spec["noise_probs"])
    raise ValueError(f"unknown kernel type: {kind!r}")
