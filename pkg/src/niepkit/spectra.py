"""Candidate spectra, the reality condition, and conjugate-pair coordinates.

A spectrum is an ordered list of complex eigenvalue candidates.  A spectrum
that is closed under conjugation can be rewritten as ``n - 2k`` reals followed
by ``k`` conjugate pairs; the pair ``y + iz, y - iz`` is stored as the real
coordinate pair ``(y, z)``.  That encoding is a bijection once we fix the
canonical choices ``z > 0``, reals sorted descending, and pairs sorted by
``(y, z)`` descending.

Text grammar: spectra are comma-separated complex literals ``a``, ``a+bi``,
``a-bi`` (also ``bi``, ``i``, ``-i``); whitespace is ignored.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import ParseError, RealityViolation

TOL_SCALE = 1e-9


def scale_tol(values, base: float = TOL_SCALE) -> float:
    """Tolerance relative to the largest modulus in ``values``."""
    mx = max((abs(v) for v in values), default=0.0)
    return base * (1.0 + mx)


@dataclass(frozen=True)
class Spectrum:
    """Ordered list of n complex eigenvalue candidates."""

    values: tuple[complex, ...]

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if not vals:
            raise ValueError("spectrum must contain at least one value")
        if any(not cmath.isfinite(v) for v in vals):
            raise ValueError("spectrum values must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def max_modulus(self) -> float:
        return max(abs(v) for v in self.values)

    def scaled(self, c: float) -> "Spectrum":
        return Spectrum(tuple(c * v for v in self.values))


@dataclass(frozen=True)
class CanonicalSpectrum:
    """Real coordinates for a conjugation-closed spectrum with k pairs.

    ``reals`` holds the n - 2k real entries (descending); ``pairs`` holds one
    ``(y, z)`` coordinate pair per conjugate pair ``y +- iz`` with ``z > 0``,
    sorted by ``(y, z)`` descending.  The constructor normalizes the order.
    """

    reals: tuple[float, ...] = ()
    pairs: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        reals = tuple(sorted((float(x) for x in self.reals), reverse=True))
        pairs = tuple(sorted(((float(y), float(z)) for y, z in self.pairs), reverse=True))
        if not reals and not pairs:
            raise ValueError("canonical spectrum must have at least one coordinate")
        if any(not cmath.isfinite(x) for x in reals):
            raise ValueError("real coordinates must be finite")
        for y, z in pairs:
            if not (cmath.isfinite(y) and cmath.isfinite(z)):
                raise ValueError("pair coordinates must be finite")
            if z <= 0:
                raise ValueError(f"pair coordinate z must be positive, got {z}")
        object.__setattr__(self, "reals", reals)
        object.__setattr__(self, "pairs", pairs)

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def n(self) -> int:
        return len(self.reals) + 2 * len(self.pairs)

    def coordinates(self) -> tuple[float, ...]:
        """Flat coordinate vector (x_1..x_{n-2k}, y_1, z_1, ..., y_k, z_k)."""
        flat = list(self.reals)
        for y, z in self.pairs:
            flat.extend((y, z))
        return tuple(flat)


@dataclass(frozen=True)
class RealityReport:
    """Outcome of the conjugation-closure check.

    ``real_indices`` lists entries treated as real, ``pairs`` the matched
    conjugate index pairs, ``unmatched`` everything left over.
    """

    holds: bool
    real_indices: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    unmatched: tuple[int, ...]
    tolerance_used: float

    def __post_init__(self):
        if self.holds != (len(self.unmatched) == 0):
            raise ValueError("holds flag inconsistent with unmatched list")


def check_reality(s: Spectrum, tol: float | None = None) -> RealityReport:
    """Check whether the multiset of values equals its conjugate multiset.

    Entries with ``|imag| <= tol`` count as real.  The remaining entries are
    matched greedily, closest conjugate first; a pair (i, j) is accepted when
    ``|conj(values[i]) - values[j]| <= tol``.
    """
    if tol is None:
        tol = scale_tol(s.values)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    reals = []
    uppers = []
    lowers = []
    for i, v in enumerate(s.values):
        if abs(v.imag) <= tol:
            reals.append(i)
        elif v.imag > 0:
            uppers.append(i)
        else:
            lowers.append(i)
    candidates = sorted(
        (abs(s.values[i].conjugate() - s.values[j]), i, j)
        for i in uppers
        for j in lowers
    )
    taken: set[int] = set()
    matched: list[tuple[int, int]] = []
    for dist, i, j in candidates:
        if dist > tol:
            break
        if i in taken or j in taken:
            continue
        taken.add(i)
        taken.add(j)
        matched.append((i, j))
    unmatched = tuple(i for i in uppers + lowers if i not in taken)
    return RealityReport(
        holds=not unmatched,
        real_indices=tuple(reals),
        pairs=tuple(sorted(matched)),
        unmatched=unmatched,
        tolerance_used=tol,
    )


def canonicalize(s: Spectrum, tol: float | None = None) -> CanonicalSpectrum:
    """Map a conjugation-closed spectrum to its real coordinates.

    Matched pairs are symmetrized: y is the mean real part, z the mean
    absolute imaginary part, so exact conjugate inputs round-trip exactly.

    Raises RealityViolation if the reality check fails.
    """
    report = check_reality(s, tol)
    if not report.holds:
        raise RealityViolation(
            f"spectrum is not conjugation-closed; unmatched indices {report.unmatched}"
        )
    reals = tuple(s.values[i].real for i in report.real_indices)
    pairs = []
    for i, j in report.pairs:
        u, w = s.values[i], s.values[j]
        pairs.append(((u.real + w.real) / 2.0, (abs(u.imag) + abs(w.imag)) / 2.0))
    return CanonicalSpectrum(reals=reals, pairs=tuple(pairs))


def phi_inverse(c: CanonicalSpectrum) -> Spectrum:
    """Rebuild the complex spectrum: reals, then y + iz, y - iz per pair."""
    values: list[complex] = [complex(x, 0.0) for x in c.reals]
    for y, z in c.pairs:
        values.append(complex(y, z))
        values.append(complex(y, -z))
    return Spectrum(tuple(values))


def parse_spectrum(text: str) -> Spectrum:
    """Parse comma-separated complex literals into a Spectrum."""
    tokens = text.split(",")
    values = []
    pos = 1
    for tok in tokens:
        stripped = "".join(tok.split())
        if not stripped:
            raise ParseError("empty spectrum entry", line=1, column=pos)
        try:
            v = complex(stripped.lower().replace("i", "j"))
        except ValueError:
            raise ParseError(f"bad complex literal {tok.strip()!r}", line=1, column=pos) from None
        if not cmath.isfinite(v):
            raise ParseError(f"non-finite spectrum entry {tok.strip()!r}", line=1, column=pos)
        values.append(v)
        pos += len(tok) + 1
    return Spectrum(tuple(values))


def format_spectrum(s: Spectrum) -> str:
    """Serialize back to the comma-separated a+bi grammar."""
    return ",".join(_format_complex(v) for v in s.values)


def _format_complex(v: complex) -> str:
    if v.imag == 0:
        return repr(v.real)
    sign = "+" if v.imag >= 0 else "-"
    return f"{repr(v.real)}{sign}{repr(abs(v.imag))}i"
