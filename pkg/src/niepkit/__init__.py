"""Tools for deciding and exploring nonnegative inverse eigenvalue problems.

The pipeline: parse a candidate spectrum, test the necessary conditions,
encode it in conjugate-pair coordinates, search for a nonnegative witness
matrix, and export the underlying polynomial systems for external
quantifier-elimination or SMT tools.
"""

from .conditions import ConditionCertificate, certify
from .emit import (
    Polynomial,
    PolynomialSystem,
    embed_coefficient_system,
    embed_spectral_system,
    parse_system,
    serialize_smt,
    serialize_system,
)
from .errors import (
    ConfigError,
    ConvergenceFailure,
    DimensionMismatch,
    DimensionTooLarge,
    NiepError,
    NotRealizable,
    ParseError,
    RealityViolation,
)
from .matrixfun import (
    NonnegMatrix,
    format_matrix,
    parse_matrix,
    principal_minor_sum,
    principal_minor_sum_bruteforce,
    spectrum_of,
)
from .oracle import SampleConfig, brute_force_member, exact_realizable_2, sample_realizable
from .spectra import (
    CanonicalSpectrum,
    RealityReport,
    Spectrum,
    canonicalize,
    check_reality,
    format_spectrum,
    parse_spectrum,
    phi_inverse,
)
from .symfun import (
    CharPolyCoeffs,
    coeffs_from_spectrum,
    elementary_symmetric,
    modified_symmetric,
    moments_consistency,
    power_moment,
)
from .witness import (
    DecisionReport,
    SearchConfig,
    Verdict,
    WitnessReport,
    boundary_perturb,
    boundary_solve_2x2,
    decide_realizable,
    search_witness,
    verify_witness,
)

__version__ = "0.1.0"
