"""Nonnegative matrices, principal-minor sums, and spectrum extraction.

E_j(A), the sum of the j-by-j principal minors, is computed from the
characteristic polynomial via the Faddeev-LeVerrier trace recurrence; an
explicit subset-determinant enumeration is kept as the slow cross-check.
The recurrence also yields the Horner-tail matrices, whose transposes are
the entrywise gradients of the E_j (used by the witness search).

Text grammar: rows separated by ';', entries by ','; whitespace ignored.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionTooLarge, ParseError
from .spectra import Spectrum

logger = logging.getLogger(__name__)

# Entries in [-NEG_CLAMP, 0) are treated as optimizer round-off and clamped.
NEG_CLAMP = 1e-12

BRUTE_FORCE_NMAX = 12


@dataclass(frozen=True, eq=False)
class NonnegMatrix:
    """Square entrywise-nonnegative real matrix; strict demands > 0."""

    entries: np.ndarray
    strict: bool = False

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValueError(f"matrix must be square and nonempty, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        lo = a.min()
        if lo < -NEG_CLAMP:
            raise ValueError(f"matrix entry {lo} is negative beyond the clamp threshold")
        if lo < 0:
            logger.debug("clamping %d tiny negative entries to 0", int((a < 0).sum()))
            a[a < 0] = 0.0
        if self.strict and a.min() <= 0:
            raise ValueError("strict matrix requires every entry > 0")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def scaled(self, c: float) -> "NonnegMatrix":
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return NonnegMatrix(c * np.asarray(self.entries), strict=self.strict and c > 0)


def charpoly_tails(a: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
    """Faddeev-LeVerrier pass over a dense array.

    Returns (c, tails) with det(tI - A) = sum_j c[j] t^{n-j}, c[0] = 1, and
    tails[j] the Horner-tail matrix A^j + c[1] A^{j-1} + ... + c[j] I for
    j = 0..n-1.  The gradient of E_j = (-1)^j c[j] with respect to the
    entries of A is (-1)^{j+1} tails[j-1].T.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    c = np.zeros(n + 1)
    c[0] = 1.0
    tails = []
    m = np.eye(n)
    for k in range(1, n + 1):
        tails.append(m)
        am = a @ m
        c[k] = -np.trace(am) / k
        m = am + c[k] * np.eye(n)
    return c, tails


def minor_sums(a: NonnegMatrix) -> np.ndarray:
    """All of E_1(A)..E_n(A) in one recurrence pass."""
    c, _ = charpoly_tails(a.entries)
    signs = np.where(np.arange(a.n + 1) % 2 == 0, 1.0, -1.0)
    return (signs * c)[1:]


def principal_minor_sum(a: NonnegMatrix, j: int) -> float:
    """E_j(A): the sum of the j-by-j principal minors, via the recurrence."""
    if not 1 <= j <= a.n:
        raise IndexError(f"minor order {j} out of range 1..{a.n}")
    return float(minor_sums(a)[j - 1])


def principal_minor_sum_bruteforce(a: NonnegMatrix, j: int) -> float:
    """E_j(A) by enumerating all C(n, j) principal submatrix determinants."""
    n = a.n
    if n > BRUTE_FORCE_NMAX:
        raise DimensionTooLarge(f"brute-force minors limited to n <= {BRUTE_FORCE_NMAX}, got {n}")
    if not 1 <= j <= n:
        raise IndexError(f"minor order {j} out of range 1..{n}")
    total = 0.0
    for rows in itertools.combinations(range(n), j):
        sub = np.asarray(a.entries)[np.ix_(rows, rows)]
        total += float(np.linalg.det(sub)) if j > 1 else float(sub[0, 0])
    return total


def spectrum_of(a: NonnegMatrix) -> Spectrum:
    """Eigenvalues of A, ordered by descending real part then imaginary part.

    Symmetric inputs are routed to the symmetric eigensolver.
    """
    arr = np.asarray(a.entries)
    try:
        if np.array_equal(arr, arr.T):
            vals = np.linalg.eigvalsh(arr).astype(complex)
        else:
            vals = np.linalg.eigvals(arr)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue computation failed: {exc}") from exc
    order = np.lexsort((-vals.imag, -vals.real))
    return Spectrum(tuple(complex(v) for v in vals[order]))


def parse_matrix(text: str, strict: bool = False) -> NonnegMatrix:
    """Parse row-major matrix text, e.g. ``0,1;1,0``."""
    rows = []
    for row_text in text.split(";"):
        entries = []
        for col, tok in enumerate(row_text.split(","), start=1):
            stripped = "".join(tok.split())
            try:
                x = float(stripped)
            except ValueError:
                raise ParseError(
                    f"bad matrix entry {tok.strip()!r}", line=1, column=col
                ) from None
            if not math.isfinite(x):
                raise ParseError(f"non-finite matrix entry {tok.strip()!r}", line=1, column=col)
            entries.append(x)
        rows.append(entries)
    if len({len(r) for r in rows}) != 1 or len(rows) != len(rows[0]):
        raise ParseError(f"matrix text is not square: {len(rows)} rows", line=1, column=1)
    try:
        return NonnegMatrix(np.array(rows), strict=strict)
    except ValueError as exc:
        raise ParseError(str(exc), line=1, column=1) from None


def format_matrix(a: NonnegMatrix) -> str:
    """Serialize back to the ';'-separated row-major grammar."""
    return ";".join(",".join(repr(float(x)) for x in row) for row in np.asarray(a.entries))
