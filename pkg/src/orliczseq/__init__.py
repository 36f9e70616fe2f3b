"""Orlicz-type sequence norms and approximation machinery for periodic signals.

A signal is a finitely supported map of Fourier coefficients; its size is a
Luxemburg norm built from a convex gauge, and the classical approximation
quantities (fractional smoothness moduli, best approximations, Jackson means,
Peetre K-functionals) become exact coefficient-space computations that can be
cross-checked against each other.
"""

from .approx import (
    KernelSpec,
    best_approx,
    jackson_approximant,
    jackson_kernel,
    psi_bernstein_ratio,
    psi_direct_ratio,
)
from .fracdiff import binom, frac_difference, frac_difference_series, k_constant, modulus
from .kfunc import KEstimate, difference_derivative_bracket, k_functional
from .orlicz import (
    OrliczFunction,
    conjugate,
    dual_witness,
    exp_minus_one,
    from_spec,
    luxemburg_norm,
    orlicz_norm,
    power,
    power_log,
)
from .spectrum import (
    CoeffSeq,
    PsiWeights,
    analyze_samples,
    evaluate,
    fourier_sum,
    psi_derivative,
    read_coeffs,
    tail,
    write_coeffs,
)
from .verify import (
    MajorantOmega,
    Report,
    balpha_check,
    classify,
    direct_report,
    equivalence_report,
    inverse_report,
    rates_report,
)

__version__ = "0.1.0"

__all__ = [
    "CoeffSeq", "PsiWeights", "analyze_samples", "evaluate", "fourier_sum",
    "psi_derivative", "read_coeffs", "tail", "write_coeffs",
    "OrliczFunction", "power", "exp_minus_one", "power_log", "from_spec",
    "conjugate", "luxemburg_norm", "orlicz_norm", "dual_witness",
    "binom", "k_constant", "frac_difference", "frac_difference_series", "modulus",
    "best_approx", "KernelSpec", "jackson_kernel", "jackson_approximant",
    "psi_bernstein_ratio", "psi_direct_ratio",
    "KEstimate", "k_functional", "difference_derivative_bracket",
    "Report", "MajorantOmega", "balpha_check", "classify", "rates_report",
    "direct_report", "inverse_report", "equivalence_report",
    "__version__",
]
