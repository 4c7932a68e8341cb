"""Exact joint law of (hypothesis, training set) and its information measures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .distributions import (
    DEFAULT_ENUMERATION_CAP,
    DiscreteDistribution,
    enumerate_multisets,
    enumerate_training_sets,
    require_enumerable,
)
from .kernels import LearningKernel

DEFAULT_W_ROUND_DIGITS = 10
_LOG_SPACE_RATIO = 1e15


class InformationKind(str, Enum):
    MI = "mi"
    POWER = "power"
    CHI_SQUARE = "chi2"


@dataclass(frozen=True)
class InformationValue:
    value: float
    kind: InformationKind
    order: float | None = None

    def to_dict(self) -> dict:
        return {"value": self.value, "kind": self.kind.value, "order": self.order}


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Joint law over (hypothesis atom, training-set column).

    Columns are equivalence classes of training sets sharing one conditional
    hypothesis law; merging such columns leaves every functional computed here
    (mutual/power/chi-square information, density ratios, entropies) unchanged,
    so the default builder groups aggressively to keep the matrix small.
    """

    w_atoms: tuple[float, ...]
    mass: np.ndarray  # shape (len(w_atoms), s_count), row-major in w
    w_probs: np.ndarray
    s_probs: np.ndarray

    @property
    def s_count(self) -> int:
        return self.mass.shape[1]

    @property
    def w_count(self) -> int:
        return self.mass.shape[0]

    @classmethod
    def from_mass(cls, w_atoms, mass) -> "JointDistribution":
        mass = np.asarray(mass, dtype=float)
        w_atoms = tuple(float(a) for a in w_atoms)
        if mass.ndim != 2 or mass.shape[0] != len(w_atoms):
            raise ValueError("mass must be a matrix with one row per hypothesis atom")
        if mass.size == 0:
            raise ValueError("empty joint")
        if np.any(mass < 0):
            raise ValueError("negative joint mass")
        total = float(mass.sum())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"joint mass sums to {total!r}, expected 1")
        order = np.argsort(w_atoms)
        w_sorted = tuple(w_atoms[i] for i in order)
        if any(b <= a for a, b in zip(w_sorted, w_sorted[1:])):
            raise ValueError("duplicate hypothesis atoms")
        mass = mass[order, :]
        w_probs = mass.sum(axis=1)
        s_probs = mass.sum(axis=0)
        # Zero-mass rows/columns contribute nothing to any functional; drop them.
        keep_rows = w_probs > 0
        keep_cols = s_probs > 0
        mass = mass[np.ix_(keep_rows, keep_cols)]
        return cls(
            w_atoms=tuple(a for a, k in zip(w_sorted, keep_rows) if k),
            mass=mass,
            w_probs=mass.sum(axis=1),
            s_probs=mass.sum(axis=0),
        )

    def to_dict(self) -> dict:
        return {
            "w_atoms": list(self.w_atoms),
            "s_count": self.s_count,
            "mass": self.mass.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "JointDistribution":
        joint = cls.from_mass(data["w_atoms"], data["mass"])
        stated = data.get("s_count")
        if stated is not None and stated != len(data["mass"][0]):
            raise ValueError("s_count does not match the mass matrix")
        return joint


def _conditional_groups(d: DiscreteDistribution, n: int, kernel: LearningKernel,
                        w_round_digits: int, cap: int):
    """Group enumerated training sets by their (rounded) conditional hypothesis law.

    Returns a list of (conditional, total P_S mass) pairs covering the product space.
    """
    require_enumerable(d.support_size, n, cap)
    if kernel.permutation_invariant:
        realizations = enumerate_multisets(d, n)
    else:
        realizations = (
            (r.values(d), r.prob) for r in enumerate_training_sets(d, n, cap)
        )
    groups: dict[tuple, list] = {}
    for values, p_s in realizations:
        cond = kernel.conditional(values)
        if not isinstance(cond, DiscreteDistribution):
            raise ValueError(f"kernel output invalid: expected DiscreteDistribution, got {type(cond)!r}")
        rounded = _round_conditional(cond, w_round_digits)
        key = (rounded.atoms, rounded.probs)
        entry = groups.get(key)
        if entry is None:
            groups[key] = [rounded, p_s]
        else:
            entry[1] += p_s
    return [(cond, p) for cond, p in groups.values()]


def _round_conditional(cond: DiscreteDistribution, digits: int) -> DiscreteDistribution:
    from .distributions import make_discrete

    atoms = [round(a, digits) + 0.0 for a in cond.atoms]
    return make_discrete(atoms, cond.probs)


def build_joint(
    d: DiscreteDistribution,
    n: int,
    kernel: LearningKernel,
    w_round_digits: int = DEFAULT_W_ROUND_DIGITS,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> JointDistribution:
    """Enumerate the product space exactly and assemble the joint law of (W, S).

    Hypothesis values are rounded to ``w_round_digits`` decimals before grouping so
    that atoms equal in exact arithmetic are not split by floating-point noise.
    """
    groups = _conditional_groups(d, n, kernel, w_round_digits, cap)
    w_atoms = sorted({a for cond, _ in groups for a in cond.atoms})
    w_index = {a: i for i, a in enumerate(w_atoms)}
    mass = np.zeros((len(w_atoms), len(groups)))
    for col, (cond, p_s) in enumerate(groups):
        for a, pa in zip(cond.atoms, cond.probs):
            mass[w_index[a], col] = p_s * pa
    return JointDistribution.from_mass(w_atoms, mass)


def _power_sum(j: JointDistribution, t: float) -> float:
    """sum over cells of mass^t / product^(t-1); log-space above the ratio cutoff."""
    rows, cols = np.nonzero(j.mass)
    terms = []
    for r, c in zip(rows, cols):
        m = j.mass[r, c]
        prod = j.w_probs[r] * j.s_probs[c]
        ratio = m / prod
        if ratio > _LOG_SPACE_RATIO:
            terms.append(math.exp(t * math.log(m) - (t - 1.0) * math.log(prod)))
        else:
            terms.append(ratio**t * prod)
    return math.fsum(terms)


def _floor_roundoff(value: float) -> float:
    # information values are divergences, so a hair below zero is summation
    # round-off; anything materially negative is left alone for callers to reject
    return 0.0 if -1e-12 < value < 0.0 else value


def mutual_information(j: JointDistribution) -> InformationValue:
    """I(W;S): KL divergence of the joint from the product of its marginals, in nats."""
    rows, cols = np.nonzero(j.mass)
    value = math.fsum(
        j.mass[r, c] * math.log(j.mass[r, c] / (j.w_probs[r] * j.s_probs[c]))
        for r, c in zip(rows, cols)
    )
    return InformationValue(value=_floor_roundoff(value), kind=InformationKind.MI)


def power_information(j: JointDistribution, t: float) -> InformationValue:
    """Power divergence of order t between the joint and the product of marginals."""
    if t <= 1:
        raise ValueError("order t must be > 1")
    value = _floor_roundoff(_power_sum(j, t) - 1.0)
    return InformationValue(value=value, kind=InformationKind.POWER, order=t)


def chi_square_information(j: JointDistribution) -> InformationValue:
    """Chi-square information; the power information at t = 2."""
    inner = power_information(j, 2.0)
    return InformationValue(value=inner.value, kind=InformationKind.CHI_SQUARE, order=2.0)


def max_density_ratio(j: JointDistribution) -> float:
    """Largest conditional-to-marginal hypothesis density ratio across the joint."""
    ratios = j.mass / (j.w_probs[:, None] * j.s_probs[None, :])
    return float(ratios.max())


def entropy(probs: np.ndarray) -> float:
    """Shannon entropy in nats of a probability vector."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(math.fsum(-x * math.log(x) for x in p))


def plugin_joint_mc(
    d: DiscreteDistribution,
    n: int,
    kernel: LearningKernel,
    draws: int,
    seed: int,
    w_round_digits: int = DEFAULT_W_ROUND_DIGITS,
) -> JointDistribution:
    """Histogram plug-in estimate of the joint law from Monte Carlo draws.

    Approximate cross-check path only: every cell frequency carries sampling error,
    and the plug-in information values are biased upward for finite draws.  Exact
    enumeration via :func:`build_joint` is the reference whenever it fits the cap.
    """
    if draws < 1:
        raise ValueError("draws must be >= 1")
    rng = np.random.default_rng(seed)
    idx = rng.choice(d.support_size, size=(draws, n), p=d.probs_array())
    codes = idx @ (d.support_size ** np.arange(n))
    order = np.argsort(codes, kind="stable")
    counts: dict[tuple[int, float], int] = {}
    col_keys: list[int] = []
    start = 0
    sorted_codes = codes[order]
    while start < draws:
        stop = start
        while stop < draws and sorted_codes[stop] == sorted_codes[start]:
            stop += 1
        rows = order[start:stop]
        values = tuple(d.atoms[i] for i in idx[rows[0]])
        cond = _round_conditional(kernel.conditional(values), w_round_digits)
        ws = rng.choice(cond.atoms_array(), size=stop - start, p=cond.probs_array())
        code = int(sorted_codes[start])
        col_keys.append(code)
        for w in ws:
            key = (code, float(w))
            counts[key] = counts.get(key, 0) + 1
        start = stop
    w_atoms = sorted({w for _, w in counts})
    w_index = {a: i for i, a in enumerate(w_atoms)}
    col_index = {c: i for i, c in enumerate(col_keys)}
    mass = np.zeros((len(w_atoms), len(col_keys)))
    for (code, w), cnt in counts.items():
        mass[w_index[w], col_index[code]] = cnt / draws
    return JointDistribution.from_mass(w_atoms, mass)
