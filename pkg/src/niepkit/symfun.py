"""Elementary symmetric functions, power moments, and coefficient conversion.

Symmetric functions are evaluated by the stable product recurrence (expanding
the monic polynomial with the given roots coefficient by coefficient), never
by subset enumeration; the O(2^n) subset sum survives only as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .spectra import CanonicalSpectrum, Spectrum, canonicalize, phi_inverse

# Threshold for dropping the imaginary residue of a value that is real by
# construction (conjugate-pair symmetry); larger residues indicate a bug.
REAL_RESIDUE_RTOL = 1e-12


@dataclass(frozen=True)
class CharPolyCoeffs:
    """Coefficients (k_1..k_n) of t^n + k_1 t^{n-1} + ... + k_n."""

    k: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.k)


def elementary_symmetric(values, j: int) -> complex:
    """S_j of the given values: the sum over all j-subsets of products.

    Computed by the product recurrence over Prod(t + v_i); raises IndexError
    unless 1 <= j <= len(values).
    """
    vals = [complex(v) for v in values]
    n = len(vals)
    if not 1 <= j <= n:
        raise IndexError(f"symmetric function order {j} out of range 1..{n}")
    e = [complex(0.0)] * (j + 1)
    e[0] = complex(1.0)
    for i, v in enumerate(vals):
        for m in range(min(i + 1, j), 0, -1):
            e[m] += v * e[m - 1]
    return e[j]


def _forced_real(v: complex) -> float:
    """Drop an imaginary residue that symmetry says must be roundoff."""
    if abs(v.imag) > REAL_RESIDUE_RTOL * (1.0 + abs(v)):
        raise ArithmeticError(f"imaginary residue {v.imag!r} too large for a forced-real value")
    return v.real


def modified_symmetric(c: CanonicalSpectrum, j: int) -> float:
    """S_j composed with the pair-coordinate decoding; always real."""
    return _forced_real(elementary_symmetric(phi_inverse(c).values, j))


def power_moment(s: Spectrum, j: int) -> complex:
    """The j-th power sum of the spectrum."""
    if j < 1:
        raise IndexError(f"moment order must be >= 1, got {j}")
    return sum(v**j for v in s.values)


def coeffs_from_spectrum(s: Spectrum, tol: float | None = None) -> CharPolyCoeffs:
    """Characteristic-polynomial coefficients k_j = (-1)^j S_j of the values.

    Requires the reality condition (real coefficients); matched conjugate
    pairs are symmetrized first so the real result is exact by construction.
    """
    c = canonicalize(s, tol)  # raises RealityViolation
    vals = phi_inverse(c).values
    coeffs = []
    sign = 1.0
    for j in range(1, s.n + 1):
        sign = -sign
        coeffs.append(sign * _forced_real(elementary_symmetric(vals, j)))
    return CharPolyCoeffs(k=tuple(coeffs))


def moments_consistency(s: Spectrum, jmax: int) -> float:
    """Cross-check S_j against moments via Newton's identities.

    Evaluates j*S_j = sum_{i=1..j} (-1)^{i-1} S_{j-i} s_i for j <= jmax and
    returns the largest residual, scaled by the magnitude of the terms.
    """
    if not 1 <= jmax <= s.n:
        raise IndexError(f"jmax must lie in 1..{s.n}, got {jmax}")
    worst = 0.0
    esym = [complex(1.0)] + [elementary_symmetric(s.values, j) for j in range(1, jmax + 1)]
    moments = [complex(0.0)] + [power_moment(s, j) for j in range(1, jmax + 1)]
    for j in range(1, jmax + 1):
        lhs = j * esym[j]
        terms = [(-1) ** (i - 1) * esym[j - i] * moments[i] for i in range(1, j + 1)]
        rhs = sum(terms)
        scale = 1.0 + abs(lhs) + sum(abs(t) for t in terms)
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst
