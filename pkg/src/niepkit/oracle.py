"""Independent ground truth: sampling, the exact 2x2 rule, grid membership.

Everything here exists to check the rest of the package from a second code
path.  The grid scanner evaluates principal-minor sums through explicit
closed-form formulas (n <= 3), not through the trace recurrence, so the two
routes stay independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionMismatch, DimensionTooLarge, NotRealizable
from .matrixfun import NonnegMatrix, format_matrix, spectrum_of
from .spectra import CanonicalSpectrum, Spectrum, format_spectrum, scale_tol
from .symfun import modified_symmetric

DISTRIBUTIONS = ("uniform01", "exponential", "sparse")

GRID_AXIS_MAX = 30
GRID_POINT_BUDGET = 60_000_000
_CHUNK = 200_000


@dataclass(frozen=True)
class SampleConfig:
    """Controls the random realizable-spectrum generator."""

    n: int
    count: int = 1
    distribution: str = "uniform01"
    p: float = 0.5
    seed: int = 0
    symmetric: bool = False
    strict: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"dimension must be >= 1, got {self.n}")
        if self.count < 1:
            raise ConfigError(f"count must be >= 1, got {self.count}")
        if self.distribution not in DISTRIBUTIONS:
            raise ConfigError(f"unknown distribution {self.distribution!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"sparse density p must lie in [0, 1], got {self.p}")
        if self.strict and self.distribution == "sparse" and self.p < 1.0:
            raise ConfigError("strict positivity is incompatible with sparse sampling")


def sample_realizable(cfg: SampleConfig) -> list[tuple[NonnegMatrix, Spectrum]]:
    """Draw nonnegative matrices and pair them with their spectra.

    Realizability holds by construction.  Deterministic for a fixed config.
    """
    rng = np.random.default_rng(cfg.seed)
    out = []
    for _ in range(cfg.count):
        for _attempt in range(100):
            m = _draw(rng, cfg)
            if cfg.symmetric:
                m = (m + m.T) / 2.0
            if not cfg.strict or m.min() > 0:
                break
        else:
            raise ConfigError("could not draw a strictly positive matrix")
        mat = NonnegMatrix(m, strict=cfg.strict)
        out.append((mat, spectrum_of(mat)))
    return out


def _draw(rng: np.random.Generator, cfg: SampleConfig) -> np.ndarray:
    shape = (cfg.n, cfg.n)
    if cfg.distribution == "uniform01":
        return rng.random(shape)
    if cfg.distribution == "exponential":
        return rng.exponential(1.0, shape)
    return rng.random(shape) * (rng.random(shape) < cfg.p)


def serialize_samples(pairs) -> str:
    """One record per line: matrix text, a tab, spectrum text."""
    return "\n".join(
        f"{format_matrix(m)}\t{format_spectrum(s)}" for m, s in pairs
    ) + ("\n" if pairs else "")


def exact_realizable_2(s: Spectrum, tol: float | None = None) -> bool:
    """Closed-form decision for n = 2.

    A real pair (l1 >= l2) is realizable iff l1 >= |l2|; nonreal pairs never
    are, because a 2x2 nonnegative matrix has discriminant
    (a - d)^2 + 4bc >= 0.  Validated against the grid scanner in the tests.
    """
    if s.n != 2:
        raise DimensionMismatch(f"exact rule is for n = 2, got n = {s.n}")
    if tol is None:
        tol = scale_tol(s.values)
    if any(abs(v.imag) > tol for v in s.values):
        return False
    hi = max(v.real for v in s.values)
    lo = min(v.real for v in s.values)
    return hi + lo >= -tol and hi >= abs(lo) - tol


def witness_matrix_2(s: Spectrum, tol: float | None = None) -> NonnegMatrix:
    """Symmetric witness [[p, q], [q, p]] with p = (l1+l2)/2, q = (l1-l2)/2."""
    if not exact_realizable_2(s, tol):
        raise NotRealizable(f"{format_spectrum(s)} is not a 2x2 nonnegative spectrum")
    hi = max(v.real for v in s.values)
    lo = min(v.real for v in s.values)
    p = max((hi + lo) / 2.0, 0.0)
    q = (hi - lo) / 2.0
    return NonnegMatrix(np.array([[p, q], [q, p]]))


def _minor_targets(c: CanonicalSpectrum) -> np.ndarray:
    return np.array([modified_symmetric(c, j) for j in range(1, c.n + 1)])


def _batch_residual(cols: list[np.ndarray], n: int, targets: np.ndarray) -> np.ndarray:
    """Max relative minor-sum residual per grid point, closed-form minors."""
    if n == 1:
        (a11,) = cols
        e = [a11]
    elif n == 2:
        a11, a12, a21, a22 = cols
        e = [a11 + a22, a11 * a22 - a12 * a21]
    else:
        a11, a12, a13, a21, a22, a23, a31, a32, a33 = cols
        e1 = a11 + a22 + a33
        e2 = (
            (a11 * a22 - a12 * a21)
            + (a11 * a33 - a13 * a31)
            + (a22 * a33 - a23 * a32)
        )
        e3 = (
            a11 * (a22 * a33 - a23 * a32)
            - a12 * (a21 * a33 - a23 * a31)
            + a13 * (a21 * a32 - a22 * a31)
        )
        e = [e1, e2, e3]
    res = np.zeros_like(e[0])
    for ej, tj in zip(e, targets):
        np.maximum(res, np.abs(ej - tj) / (1.0 + abs(tj)), out=res)
    return res


def _scan(axes: list[np.ndarray], n: int, targets: np.ndarray) -> tuple[float, np.ndarray]:
    """Exhaustive scan of the axis product; returns (best residual, entries)."""
    shape = tuple(len(ax) for ax in axes)
    total = int(np.prod(shape))
    best = np.inf
    best_idx: tuple[int, ...] | None = None
    for lo in range(0, total, _CHUNK):
        flat = np.arange(lo, min(lo + _CHUNK, total))
        idx = np.unravel_index(flat, shape)
        cols = [ax[i] for ax, i in zip(axes, idx)]
        res = _batch_residual(cols, n, targets)
        pos = int(np.argmin(res))
        if res[pos] < best:
            best = float(res[pos])
            best_idx = tuple(int(i[pos]) for i in idx)
    entries = np.array([ax[i] for ax, i in zip(axes, best_idx)]).reshape(n, n)
    return best, entries


def brute_force_member(
    c: CanonicalSpectrum,
    grid: int = 21,
    radius: float = 2.0,
    tol: float = 1e-3,
) -> bool:
    """Grid evidence for the existence of a nonnegative realization.

    Scans matrices with entries on a grid over [0, radius], then rescans a
    refined grid around the best point.  True (residual <= tol) is reliable
    up to the tolerance; False is evidence of non-membership, not proof.
    """
    n = c.n
    if n > 3:
        raise DimensionTooLarge(f"grid membership limited to n <= 3, got {n}")
    if grid < 2 or grid > GRID_AXIS_MAX:
        raise ValueError(f"grid must lie in 2..{GRID_AXIS_MAX}, got {grid}")
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if grid ** (n * n) > GRID_POINT_BUDGET:
        raise DimensionTooLarge(
            f"grid of {grid}^{n * n} points exceeds the {GRID_POINT_BUDGET} budget"
        )
    targets = _minor_targets(c)
    axes = [np.linspace(0.0, radius, grid) for _ in range(n * n)]
    best, entries = _scan(axes, n, targets)
    if best <= tol:
        return True
    step = radius / (grid - 1)
    axes = [
        np.linspace(max(0.0, x - step), min(radius, x + step), grid)
        for x in entries.ravel()
    ]
    best, _ = _scan(axes, n, targets)
    return best <= tol
