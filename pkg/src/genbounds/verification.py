"""Executable inequality checks over a battery of exactly enumerable models.

Every implemented bound is tested against exact enumeration: moment bounds against
exact moments, tail bounds against exact tail masses, and the information-measure
inequalities against exact joints.  Violations become report content, never
exceptions, so a run always produces a complete list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds as bounds_mod
from .distributions import (
    DEFAULT_ENUMERATION_CAP,
    make_discrete,
)
from .information import (
    build_joint,
    chi_square_information,
    entropy,
    max_density_ratio,
    mutual_information,
    power_information,
)
from .kernels import (
    constant_kernel,
    first_sample_kernel,
    indexing_kernel,
    mean_kernel,
    noisy_mean_kernel,
)
from .risk import (
    LearningModel,
    exact_tail_mass,
    gen_moments_exact,
    truncated_square_loss,
)

MOMENT_SLACK = 1e-9
IDENTITY_SLACK = 1e-12


@dataclass(frozen=True)
class CheckResult:
    check: str
    model: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"check": self.check, "model": self.model, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(r for r in self.results if not r.passed)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks_run": len(self.results),
            "checks_failed": len(self.failures),
            "failures": [r.to_dict() for r in self.failures],
        }

    def summary(self) -> str:
        lines = [f"{len(self.results)} checks, {len(self.failures)} failed"]
        lines.extend(f"FAIL {r.check} [{r.model}] {r.detail}" for r in self.failures)
        return "\n".join(lines)


def build_battery(random_count: int = 9, seed: int = 51) -> list[LearningModel]:
    """Fixed pedagogical models plus seeded random ones (K in 2..4, n in 1..6)."""
    coin = make_discrete([-1.0, 1.0], [0.5, 0.5])
    bit = make_discrete([0.0, 1.0], [0.5, 0.5])
    skewed = make_discrete([-1.0, -0.2, 0.4, 1.0], [0.02, 0.08, 0.3, 0.6])
    three = make_discrete([-1.0, 0.0, 1.0], [0.2, 0.5, 0.3])
    quad = make_discrete([-0.75, -0.25, 0.25, 0.75], [0.25, 0.25, 0.25, 0.25])
    wide = truncated_square_loss(10.0)
    mid = truncated_square_loss(1.1)
    tight = truncated_square_loss(0.6)
    models = [
        LearningModel(coin, 1, mean_kernel(), wide, name="coin-mean-n1"),
        LearningModel(coin, 2, mean_kernel(), wide, name="coin-mean-n2"),
        LearningModel(bit, 1, first_sample_kernel(), mid, name="fair-bit-identity"),
        LearningModel(three, 2, constant_kernel(0.1), tight, name="constant-w"),
        LearningModel(bit, 2, noisy_mean_kernel([-0.25, 0.25], [0.5, 0.5]), mid, name="noisy-mean"),
        LearningModel(skewed, 1, first_sample_kernel(), tight, name="skewed-first-sample"),
        LearningModel(quad, 4, indexing_kernel(quad), tight, name="quad-indexing-n4"),
        LearningModel(make_discrete([0.0, 1.0], [0.3, 0.7]), 3, mean_kernel(), mid, name="binary-skewed-mean-n3"),
        LearningModel(three, 2, mean_kernel(), tight, name="three-mean-n2"),
    ]
    rng = np.random.default_rng(seed)
    losses = [tight, mid, wide]
    for i in range(random_count):
        k = int(rng.integers(2, 5))
        n = 1 + i % 6
        atoms = np.sort(rng.uniform(-1.0, 1.0, size=k))
        while len(set(round(a, 12) for a in atoms)) < k:
            atoms = np.sort(rng.uniform(-1.0, 1.0, size=k))
        probs = rng.dirichlet(np.ones(k)) + 0.02
        d = make_discrete(atoms.tolist(), (probs / probs.sum()).tolist())
        kernel = [
            mean_kernel(),
            first_sample_kernel(),
            noisy_mean_kernel([-0.2, 0.2], [0.5, 0.5]),
            constant_kernel(float(d.mean())),
        ][i % 4]
        models.append(
            LearningModel(d, n, kernel, losses[i % 3], name=f"random-{i}-K{k}-n{n}-{kernel.name}")
        )
    return models


def _check_theorem1(model, joint, results, t_values, orders, cap):
    for t in t_values:
        for m in orders:
            lhs, rhs = bounds_mod.verify_theorem1(model, lambda x, y, _m=m: (x - y) ** _m, t, cap)
            results.append(CheckResult(
                check=f"theorem1[m={m},t={t}]",
                model=model.name,
                passed=lhs <= rhs + MOMENT_SLACK,
                detail=f"lhs={lhs:.6g} rhs={rhs:.6g}",
            ))


def _check_moment_soundness(model, joint, results, orders, cap):
    sigma, n = model.loss.sigma, model.n
    moments = gen_moments_exact(model, orders, cap)
    chi2 = chi_square_information(joint).value
    mi = mutual_information(joint).value
    ratio = max_density_ratio(joint)
    for m in orders:
        target = abs(moments[m].value)
        candidates = [
            bounds_mod.moment_bound_chi2(sigma, n, m, chi2),
            bounds_mod.moment_bound_ratio(sigma, n, m, ratio),
        ]
        for t in (1.5, 2.0, 3.0, 4.0):
            candidates.append(
                bounds_mod.moment_bound_power(sigma, n, m, t, power_information(joint, t).value)
            )
        for report in candidates:
            if not report.valid_relaxed:
                continue
            results.append(CheckResult(
                check=f"moment-soundness[{report.theorem},m={m}]",
                model=model.name,
                passed=target <= report.value + MOMENT_SLACK,
                detail=f"moment={target:.6g} bound={report.value:.6g}",
            ))
    mi_report = bounds_mod.second_moment_bound_mi(sigma, n, mi)
    results.append(CheckResult(
        check="moment-soundness[thm3,m=2]",
        model=model.name,
        passed=moments[2].value <= mi_report.value + MOMENT_SLACK,
        detail=f"moment={moments[2].value:.6g} bound={mi_report.value:.6g}",
    ))


def _check_information_inequalities(model, joint, results):
    chi2 = chi_square_information(joint).value
    mi = mutual_information(joint).value
    ratio = max_density_ratio(joint)
    results.append(CheckResult(
        check="info-nonnegative", model=model.name,
        passed=chi2 >= -IDENTITY_SLACK and mi >= -IDENTITY_SLACK and ratio >= 1.0 - IDENTITY_SLACK,
        detail=f"chi2={chi2:.6g} mi={mi:.6g} R={ratio:.6g}",
    ))
    for t in (3.0, 4.0):
        power = power_information(joint, t).value
        lhs = math.sqrt(chi2 + 1.0)
        rhs = (power + 1.0) ** (1.0 / (2.0 * (t - 1.0)))
        results.append(CheckResult(
            check=f"chain-chi2-vs-power[t={t}]", model=model.name,
            passed=lhs <= rhs + IDENTITY_SLACK,
            detail=f"sqrt(chi2+1)={lhs:.6g} (power+1)^(1/(2(t-1)))={rhs:.6g}",
        ))
    results.append(CheckResult(
        check="chain-mi-vs-chi2", model=model.name,
        passed=mi <= math.log1p(chi2) + IDENTITY_SLACK,
        detail=f"mi={mi:.6g} log(chi2+1)={math.log1p(chi2):.6g}",
    ))
    for t in (2.0, 3.0):
        power = power_information(joint, t).value
        results.append(CheckResult(
            check=f"info-vs-ratio[t={t}]", model=model.name,
            passed=power <= ratio**t - 1.0 + MOMENT_SLACK,
            detail=f"power={power:.6g} R^t-1={ratio**t - 1.0:.6g}",
        ))
    h_w = entropy(joint.w_probs)
    h_s = entropy(joint.s_probs)
    results.append(CheckResult(
        check="mi-vs-entropy", model=model.name,
        passed=mi <= min(h_w, h_s) + IDENTITY_SLACK,
        detail=f"mi={mi:.6g} H(W)={h_w:.6g} H(S)={h_s:.6g}",
    ))


def _check_comparisons(model, joint, results):
    sigma, n = model.loss.sigma, model.n
    chi2 = chi_square_information(joint).value
    mi = mutual_information(joint).value
    power3 = power_information(joint, 3.0).value
    prop1 = bounds_mod.compare_power_vs_chi2(2, 3.0, power3)
    if prop1.holds:
        chi2_bound = bounds_mod.moment_bound_chi2(sigma, n, 2, chi2).value
        power_bound = bounds_mod.moment_bound_power(sigma, n, 2, 3.0, power3).value
        results.append(CheckResult(
            check="prop1-implication", model=model.name,
            passed=chi2_bound <= power_bound + IDENTITY_SLACK,
            detail=f"chi2-bound={chi2_bound:.6g} power-bound={power_bound:.6g}",
        ))
    prop2 = bounds_mod.compare_chi2_vs_mi(chi2)
    if prop2.holds:
        mi_bound = bounds_mod.second_moment_bound_mi(sigma, n, mi).value
        chi2_bound = bounds_mod.moment_bound_chi2(sigma, n, 2, chi2).value
        results.append(CheckResult(
            check="prop2-implication", model=model.name,
            passed=mi_bound <= chi2_bound + MOMENT_SLACK,
            detail=f"mi-bound={mi_bound:.6g} chi2-bound={chi2_bound:.6g}",
        ))


def _check_tail_coverage(model, joint, results, deltas, cap):
    sigma, n = model.loss.sigma, model.n
    chi2 = chi_square_information(joint).value
    for delta in deltas:
        report = bounds_mod.highprob_bound_chi2(sigma, n, delta, chi2)
        if not report.valid_relaxed:
            continue
        mass = exact_tail_mass(model, report.value, cap)
        results.append(CheckResult(
            check=f"tail-coverage[delta={delta}]", model=model.name,
            passed=mass <= delta + IDENTITY_SLACK,
            detail=f"P(|gen|>bound)={mass:.6g} delta={delta}",
        ))


def _check_structure(model, joint, results, cap):
    if model.kernel.name == "constant":
        chi2 = chi_square_information(joint).value
        mi = mutual_information(joint).value
        ratio = max_density_ratio(joint)
        results.append(CheckResult(
            check="constant-kernel-independence", model=model.name,
            passed=abs(chi2) <= IDENTITY_SLACK and abs(mi) <= IDENTITY_SLACK
            and abs(ratio - 1.0) <= IDENTITY_SLACK,
            detail=f"chi2={chi2:.3g} mi={mi:.3g} R={ratio:.6g}",
        ))
    if model.kernel.name == "indexing":
        mi = mutual_information(joint).value
        h_s = entropy(joint.s_probs)
        results.append(CheckResult(
            check="injective-mi-equals-entropy", model=model.name,
            passed=abs(mi - h_s) <= MOMENT_SLACK,
            detail=f"mi={mi:.9g} H(S)={h_s:.9g}",
        ))
    coarse = build_joint(model.data, model.n, model.kernel, w_round_digits=2, cap=cap)
    fine_mi = mutual_information(joint).value
    coarse_mi = mutual_information(coarse).value
    results.append(CheckResult(
        check="data-processing", model=model.name,
        passed=coarse_mi <= fine_mi + IDENTITY_SLACK,
        detail=f"coarse={coarse_mi:.6g} fine={fine_mi:.6g}",
    ))


def _check_specializations(results):
    cases = [
        (0.5, 4, 1, 0.0), (1.0, 2, 2, 1.0), (2.0 / 9.0, 10, 3, 5.0),
        (1.3, 7, 4, 0.25), (0.9, 1, 2, 12.0),
    ]
    ok, detail = True, ""
    for sigma, n, m, info in cases:
        a = bounds_mod.moment_bound_chi2(sigma, n, m, info).value
        b = bounds_mod.moment_bound_power(sigma, n, m, 2.0, info).value
        if abs(a - b) > IDENTITY_SLACK:
            ok, detail = False, f"chi2 vs power(t=2) differ: {a!r} vs {b!r}"
            break
        c = bounds_mod.highprob_bound_chi2(sigma, n, 0.05, info).value
        d = bounds_mod.highprob_bound_power(sigma, n, 2.0, 0.05, info).value
        if abs(c - d) > IDENTITY_SLACK:
            ok, detail = False, f"tail chi2 vs power(t=2) differ: {c!r} vs {d!r}"
            break
        e = bounds_mod.expected_gen_bound(sigma, n, 2, info).value
        f = bounds_mod.moment_bound_power(sigma, n, 1, 2.0, info).value
        if abs(e - f) > IDENTITY_SLACK:
            ok, detail = False, f"expected vs power(m=1) differ: {e!r} vs {f!r}"
            break
    results.append(CheckResult(
        check="specialization-identities", model="(parameter grid)", passed=ok, detail=detail,
    ))
    crossover = bounds_mod.chi2_mi_crossover()
    results.append(CheckResult(
        check="prop2-crossover-bracket", model="(global)",
        passed=90.0 < crossover < 100.0,
        detail=f"crossover={crossover:.6f}",
    ))
    # Closed-form anchors pin every constant in the formulas, so a mutated
    # coefficient fails here even when the soundness inequalities stay slack.
    e1 = math.exp(1.0 / math.e)
    e2 = math.exp(1.0 / math.e + 0.5)
    anchors = [
        ("thm3 at mi=0", bounds_mod.second_moment_bound_mi(1.0, 9, 0.0).value, 1.0),
        ("thm3 at mi=1", bounds_mod.second_moment_bound_mi(1.0, 1, 1.0).value, 25.0),
        ("cor1 at info=0, m=1", bounds_mod.moment_bound_chi2(1.0, 2, 1, 0.0).value, e1),
        ("cor1 at info=0, m=2", bounds_mod.moment_bound_chi2(1.0, 4, 2, 0.0).value, e1 * e1),
        ("eq9 at R=1, m=2", bounds_mod.moment_bound_ratio(1.0, 4, 2, 1.0).value, e1 * e1),
        ("cor2 at info=0", bounds_mod.expected_gen_bound(1.0, 100, 2, 0.0).value, math.sqrt(0.02) * e1),
        ("thm2 at info=0, t=2", bounds_mod.moment_bound_power(1.0, 4, 1, 2.0, 0.0).value, math.sqrt(0.5) * e1),
        ("thm4 anchor", bounds_mod.highprob_bound_power(1.0, 100, 2.0, math.exp(-1), math.exp(8) - 1.0).value, e2 * 2.0 * math.sqrt(0.05)),
        ("eq12 anchor", bounds_mod.highprob_bound_renyi(1.0, 8, 2.0, math.exp(-2), 0.0).value, e2 * math.sqrt(0.5)),
        ("cor3 anchor", bounds_mod.highprob_bound_chi2(1.0, 100, math.exp(-1), math.exp(8) - 1.0).value, e2 * 2.0 * math.sqrt(0.05)),
    ]
    for label, got, expected in anchors:
        results.append(CheckResult(
            check=f"formula-anchor[{label}]", model="(closed form)",
            passed=abs(got - expected) <= IDENTITY_SLACK * max(1.0, abs(expected)),
            detail=f"got={got!r} expected={expected!r}",
        ))


def run_verification_suite(
    models: list[LearningModel] | None = None,
    t_values=(2.0, 3.0),
    moment_orders=(1, 2, 3, 4),
    deltas=(0.1, 0.05, 0.01),
    cap: int = DEFAULT_ENUMERATION_CAP,
    theorem1_orders=(1, 2, 3, 4),
) -> VerificationReport:
    """Run every implemented inequality over the battery; violations are report rows."""
    if models is None:
        models = build_battery()
    if not models:
        raise ValueError("no models")
    results: list[CheckResult] = []
    _check_specializations(results)
    for model in models:
        joint = build_joint(model.data, model.n, model.kernel, cap=cap)
        _check_theorem1(model, joint, results, t_values, theorem1_orders, cap)
        _check_moment_soundness(model, joint, results, moment_orders, cap)
        _check_information_inequalities(model, joint, results)
        _check_comparisons(model, joint, results)
        _check_tail_coverage(model, joint, results, deltas, cap)
        _check_structure(model, joint, results, cap)
    return VerificationReport(results=tuple(results))
