"""Witness search: find a nonnegative matrix realizing a target spectrum.

The existential membership statement is attacked numerically: minimize the
weighted squared mismatch between the principal-minor sums E_j(A) and the
spectrum targets over the nonnegative orthant, parametrized as A = B * B
entrywise so iterates stay feasible.  A failed search never refutes
anything; refutation is the conditions module's job.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .conditions import ConditionCertificate, certify
from .errors import (
    ConfigError,
    DimensionMismatch,
    DimensionTooLarge,
    NotRealizable,
    RealityViolation,
)
from .matrixfun import NonnegMatrix, charpoly_tails, format_matrix, minor_sums, spectrum_of
from .oracle import exact_realizable_2
from .spectra import (
    CanonicalSpectrum,
    Spectrum,
    canonicalize,
    check_reality,
    format_spectrum,
    phi_inverse,
)
from .symfun import modified_symmetric


@dataclass(frozen=True)
class SearchConfig:
    """Multi-start local search parameters.

    ``tol`` bounds the weighted residual |E_j - t_j| / (1 + |t_j|) at which
    a witness is declared found.  ``symmetric`` restricts the search to
    symmetric matrices; ``strict`` additionally demands every entry > 0.
    """

    starts: int = 64
    tol: float = 1e-8
    seed: int = 0
    nmax: int = 8
    max_iter: int = 5000
    grad_tol: float = 1e-12
    symmetric: bool = False
    strict: bool = False

    def __post_init__(self):
        if self.starts < 1:
            raise ConfigError(f"starts must be >= 1, got {self.starts}")
        if self.tol <= 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if self.nmax < 1:
            raise ConfigError(f"nmax must be >= 1, got {self.nmax}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.grad_tol <= 0:
            raise ConfigError(f"grad_tol must be positive, got {self.grad_tol}")


@dataclass(frozen=True)
class WitnessReport:
    """Search outcome; ``residual`` is the worst weighted minor-sum mismatch."""

    found: bool
    matrix: NonnegMatrix | None
    residual: float
    starts_used: int
    target: tuple[float, ...]

    def to_text(self) -> str:
        lines = [
            f"found: {'true' if self.found else 'false'}",
            f"residual: {repr(self.residual)}",
            f"starts_used: {self.starts_used}",
            "target: " + ",".join(repr(t) for t in self.target),
        ]
        if self.matrix is not None:
            lines.append(f"matrix: {format_matrix(self.matrix)}")
        return "\n".join(lines)


class Verdict(str, enum.Enum):
    REALIZABLE = "realizable_with_witness"
    CONDITIONS_VIOLATED = "conditions_violated"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class DecisionReport:
    verdict: Verdict
    certificate: ConditionCertificate
    witness: WitnessReport | None = None
    canonical: CanonicalSpectrum | None = None


def _targets(c: CanonicalSpectrum) -> np.ndarray:
    return np.array([modified_symmetric(c, j) for j in range(1, c.n + 1)])


def _objective(x: np.ndarray, n: int, targets: np.ndarray, weights: np.ndarray, symmetric: bool):
    """Weighted squared minor-sum mismatch and its gradient in B."""
    b = x.reshape(n, n)
    if symmetric:
        b = (b + b.T) / 2.0
    a = b * b
    c, tails = charpoly_tails(a)
    signs = (-1.0) ** np.arange(1, n + 1)
    e = signs * c[1:]
    r = e - targets
    f = float(np.sum(weights * r * r))
    grad_a = np.zeros((n, n))
    for j in range(1, n + 1):
        # dE_j/dA is the transposed Horner tail, with alternating sign
        grad_a += 2.0 * weights[j - 1] * r[j - 1] * (-signs[j - 1]) * tails[j - 1].T
    grad_b = grad_a * (2.0 * b)
    if symmetric:
        grad_b = (grad_b + grad_b.T) / 2.0
    return f, grad_b.ravel()


def search_witness(c: CanonicalSpectrum, cfg: SearchConfig = SearchConfig()) -> WitnessReport:
    """Multi-start minimization of the minor-sum mismatch.

    found=False means no witness was found within the start budget; it is
    never a proof of non-realizability.
    """
    n = c.n
    if n > cfg.nmax:
        raise DimensionTooLarge(f"witness search limited to n <= {cfg.nmax}, got {n}")
    targets = _targets(c)
    weights = 1.0 / (1.0 + np.abs(targets)) ** 2
    rho = max(abs(v) for v in phi_inverse(c).values)
    hi = float(np.sqrt(1.0 + rho))
    rng = np.random.default_rng(cfg.seed)
    best_res = np.inf
    best_a: np.ndarray | None = None
    for start in range(1, cfg.starts + 1):
        x0 = rng.uniform(0.0, hi, n * n)
        opt = scipy.optimize.minimize(
            _objective,
            x0,
            args=(n, targets, weights, cfg.symmetric),
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": cfg.max_iter, "gtol": cfg.grad_tol, "ftol": 0.0},
        )
        b = opt.x.reshape(n, n)
        if cfg.symmetric:
            b = (b + b.T) / 2.0
        a = b * b
        res = _weighted_residual(a, targets)
        if res < best_res:
            best_res = res
            best_a = a
        if res <= cfg.tol and (not cfg.strict or a.min() > 0):
            mat = NonnegMatrix(a, strict=cfg.strict)
            if verify_witness(mat, c, cfg.tol):
                return WitnessReport(
                    found=True,
                    matrix=mat,
                    residual=res,
                    starts_used=start,
                    target=tuple(targets),
                )
    return WitnessReport(
        found=False,
        matrix=None,
        residual=float(best_res) if best_a is not None else np.inf,
        starts_used=cfg.starts,
        target=tuple(targets),
    )


def _weighted_residual(a: np.ndarray, targets: np.ndarray) -> float:
    e = minor_sums(NonnegMatrix(np.maximum(a, 0.0)))
    return float(np.max(np.abs(e - targets) / (1.0 + np.abs(targets))))


def verify_witness(a: NonnegMatrix, c: CanonicalSpectrum, tol: float = 1e-8) -> bool:
    """Check |E_j(A) - target_j| <= tol * (1 + |target_j|) for every j.

    Independent of how the matrix was produced.
    """
    if a.n != c.n:
        raise DimensionMismatch(f"matrix is {a.n}x{a.n} but spectrum has n = {c.n}")
    targets = _targets(c)
    e = minor_sums(a)
    if np.any(np.abs(e - targets) > tol * (1.0 + np.abs(targets))):
        return False
    return bool(np.asarray(a.entries).min() >= -tol)


def decide_realizable(s: Spectrum, cfg: SearchConfig = SearchConfig()) -> DecisionReport:
    """Full pipeline: reality, necessary conditions, then witness search.

    Three-valued: a failed search yields UNKNOWN, never a refutation.
    """
    cert = certify(s)
    if not cert.overall:
        return DecisionReport(verdict=Verdict.CONDITIONS_VIOLATED, certificate=cert)
    canon = canonicalize(s)
    report = search_witness(canon, cfg)
    verdict = Verdict.REALIZABLE if report.found else Verdict.UNKNOWN
    return DecisionReport(verdict=verdict, certificate=cert, witness=report, canonical=canon)


def boundary_perturb(a: NonnegMatrix, s: float) -> NonnegMatrix:
    """A + (1/s) * J with J the all-ones matrix; strictly positive."""
    if s <= 0:
        raise ValueError(f"perturbation parameter must be positive, got {s}")
    return NonnegMatrix(np.asarray(a.entries) + 1.0 / s, strict=True)


@dataclass(frozen=True)
class Family2x2:
    """All nonnegative 2x2 matrices with a given real spectrum.

    Members are [[a, b], [c, T - a]] with a in [a_lo, a_hi] and
    b*c = offdiag_product(a) = a*(T - a) - D, where T and D are the trace
    and determinant targets.  When the product is positive, b > 0 is a free
    parameter with c = product / b; when it is zero, b or c roams freely
    while the other is 0.
    """

    trace: float
    det: float
    a_lo: float
    a_hi: float

    def offdiag_product(self, a: float) -> float:
        return a * (self.trace - a) - self.det

    def member(self, a: float, b: float = 1.0) -> NonnegMatrix:
        if not self.a_lo - 1e-12 <= a <= self.a_hi + 1e-12:
            raise ValueError(f"diagonal parameter {a} outside [{self.a_lo}, {self.a_hi}]")
        prod = self.offdiag_product(a)
        if prod < 0:
            raise ValueError(f"no nonnegative completion at a = {a}")
        if b < 0 or (b == 0 and prod > 0):
            raise ValueError(f"off-diagonal parameter b = {b} invalid for product {prod}")
        c = prod / b if b > 0 else 0.0
        return NonnegMatrix(np.array([[a, b], [c, self.trace - a]]))

    def describe(self) -> str:
        lines = [
            f"trace: {repr(self.trace)}",
            f"det: {repr(self.det)}",
            f"a_range: [{repr(self.a_lo)}, {repr(self.a_hi)}]",
            "d = trace - a",
            "b*c = a*(trace - a) - det",
        ]
        prod_lo = self.offdiag_product(self.a_lo)
        if self.a_lo == self.a_hi:
            lines.append(f"b*c = {repr(prod_lo)}")
            if prod_lo > 0:
                lines.append("parameter b > 0, c = b*c / b")
            else:
                lines.append("b = 0 with c >= 0 free, or c = 0 with b >= 0 free")
        else:
            lines.append("parameter b > 0 where b*c > 0; b or c free at b*c = 0")
        return "\n".join(lines)


def boundary_solve_2x2(s: Spectrum) -> Family2x2:
    """Solve the trace/determinant system for n = 2 in closed form.

    Raises RealityViolation for nonreal input and NotRealizable when the
    exact 2x2 rule rejects the spectrum.
    """
    if s.n != 2:
        raise DimensionMismatch(f"closed-form family is for n = 2, got n = {s.n}")
    if not check_reality(s).holds:
        raise RealityViolation("2x2 boundary family requires a conjugation-closed spectrum")
    if not exact_realizable_2(s):
        raise NotRealizable(f"{format_spectrum(s)} is not realizable at n = 2")
    hi = max(v.real for v in s.values)
    lo = min(v.real for v in s.values)
    trace = hi + lo
    det = hi * lo
    a_lo = max(0.0, lo)
    a_hi = min(trace, hi)
    return Family2x2(trace=trace, det=det, a_lo=a_lo, a_hi=a_hi)
