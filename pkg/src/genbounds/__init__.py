"""Information-theoretic bounds on moments of the generalization error.

Core objects: discrete/Gaussian data models, learning kernels, f-divergences,
joint (W, S) information measures, exact and Monte Carlo moment computation,
the bound evaluators, a self-checking verification suite, and the Gaussian
mean-estimation experiment.
"""

from .bounds import (
    CHI2_MI_STATED_THRESHOLD,
    EXP_1_OVER_E,
    EXP_1_OVER_E_PLUS_HALF,
    BoundCondition,
    BoundReport,
    ChiMiComparison,
    PowerChiComparison,
    chi2_mi_crossover,
    compare_chi2_vs_mi,
    compare_power_vs_chi2,
    expected_gen_bound,
    highprob_bound_chi2,
    highprob_bound_power,
    highprob_bound_renyi,
    moment_bound_chi2,
    moment_bound_power,
    moment_bound_ratio,
    second_moment_bound_mi,
    verify_theorem1,
)
from .distributions import (
    DEFAULT_ENUMERATION_CAP,
    DiscreteDistribution,
    EnumerationCapError,
    GaussianSpec,
    enumerate_multisets,
    enumerate_training_sets,
    make_discrete,
    quantize_gaussian,
    sample_iid,
)
from .divergences import (
    AbsoluteContinuityError,
    DivergenceKind,
    DivergenceValue,
    SupportMismatchError,
    chi_square_divergence,
    kl_divergence,
    power_divergence,
    renyi_divergence,
)
from .experiment import (
    CSV_HEADER,
    ExperimentConfig,
    ExperimentRow,
    GaussianConfig,
    emit_csv,
    emit_svg_plots,
    parse_csv,
    run_gaussian_mean_experiment,
)
from .information import (
    InformationKind,
    InformationValue,
    JointDistribution,
    build_joint,
    chi_square_information,
    entropy,
    max_density_ratio,
    mutual_information,
    plugin_joint_mc,
    power_information,
)
from .kernels import (
    LearningKernel,
    constant_kernel,
    deterministic_kernel,
    first_sample_kernel,
    indexing_kernel,
    kernel_from_spec,
    mean_kernel,
    noisy_mean_kernel,
)
from .risk import (
    LearningModel,
    LossSpec,
    MomentEstimate,
    MomentMethod,
    empirical_risk,
    enumerate_gen_values,
    exact_tail_mass,
    gen_moment_exact,
    gen_moment_mc,
    gen_moments_exact,
    gen_moments_mc,
    gen_quantile_mc,
    gen_value,
    population_risk,
    sample_gen_values,
    subgaussian_abs_moment_bound,
    truncated_square_loss,
)
from .verification import (
    CheckResult,
    VerificationReport,
    build_battery,
    run_verification_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AbsoluteContinuityError",
    "BoundCondition",
    "BoundReport",
    "CHI2_MI_STATED_THRESHOLD",
    "CSV_HEADER",
    "CheckResult",
    "ChiMiComparison",
    "DEFAULT_ENUMERATION_CAP",
    "DiscreteDistribution",
    "DivergenceKind",
    "DivergenceValue",
    "EXP_1_OVER_E",
    "EXP_1_OVER_E_PLUS_HALF",
    "EnumerationCapError",
    "ExperimentConfig",
    "ExperimentRow",
    "GaussianConfig",
    "GaussianSpec",
    "InformationKind",
    "InformationValue",
    "JointDistribution",
    "LearningKernel",
    "LearningModel",
    "LossSpec",
    "MomentEstimate",
    "MomentMethod",
    "PowerChiComparison",
    "SupportMismatchError",
    "VerificationReport",
    "build_battery",
    "build_joint",
    "chi2_mi_crossover",
    "chi_square_divergence",
    "chi_square_information",
    "compare_chi2_vs_mi",
    "compare_power_vs_chi2",
    "constant_kernel",
    "deterministic_kernel",
    "emit_csv",
    "emit_svg_plots",
    "empirical_risk",
    "entropy",
    "enumerate_gen_values",
    "enumerate_multisets",
    "enumerate_training_sets",
    "exact_tail_mass",
    "expected_gen_bound",
    "first_sample_kernel",
    "gen_moment_exact",
    "gen_moment_mc",
    "gen_moments_exact",
    "gen_moments_mc",
    "gen_quantile_mc",
    "gen_value",
    "highprob_bound_chi2",
    "highprob_bound_power",
    "highprob_bound_renyi",
    "indexing_kernel",
    "kernel_from_spec",
    "kl_divergence",
    "make_discrete",
    "max_density_ratio",
    "mean_kernel",
    "moment_bound_chi2",
    "moment_bound_power",
    "moment_bound_ratio",
    "mutual_information",
    "noisy_mean_kernel",
    "parse_csv",
    "plugin_joint_mc",
    "population_risk",
    "power_divergence",
    "power_information",
    "quantize_gaussian",
    "renyi_divergence",
    "run_gaussian_mean_experiment",
    "run_verification_suite",
    "sample_gen_values",
    "sample_iid",
    "second_moment_bound_mi",
    "subgaussian_abs_moment_bound",
    "truncated_square_loss",
    "verify_theorem1",
]
