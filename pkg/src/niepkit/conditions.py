"""Necessary conditions for a spectrum to be realizable by a nonnegative matrix.

Four checks: the trace must be nonnegative, the moment inequalities
(s_k)^m <= n^{m-1} s_{km} must hold over a finite (k, m) box, the spectrum
must be conjugation-closed, and a nonnegative real entry must attain the
maximum modulus.  All are necessary only; passing proves nothing.

Comparisons use the additive tolerance 1e-9 * (1 + max modulus).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RealityViolation
from .spectra import Spectrum, check_reality, scale_tol
from .symfun import power_moment

DEFAULT_KMAX = 4
DEFAULT_MMAX = 4
DEFAULT_PRODUCT_CAP = 16


@dataclass(frozen=True)
class ConditionCertificate:
    """Per-condition report; ``overall`` is the conjunction of the flags.

    ``jll_violations`` lists every violating (k, m) pair in scan order
    (k outer, m inner), so its first element is the minimal violation.
    When reality fails the moment box is skipped and ``jll_ok`` is False.
    """

    reality_ok: bool
    trace_ok: bool
    jll_ok: bool
    jll_violations: tuple[tuple[int, int], ...]
    perron_ok: bool
    kmax: int
    mmax: int
    product_cap: int
    overall: bool

    def __post_init__(self):
        expected = self.reality_ok and self.trace_ok and self.jll_ok and self.perron_ok
        if self.overall != expected:
            raise ValueError("overall flag must be the conjunction of the condition flags")

    def to_text(self) -> str:
        lines = [
            f"reality_ok: {_fmt_bool(self.reality_ok)}",
            f"trace_ok: {_fmt_bool(self.trace_ok)}",
            f"jll_ok: {_fmt_bool(self.jll_ok)}",
            "jll_violations: " + " ".join(f"({k},{m})" for k, m in self.jll_violations),
            f"perron_ok: {_fmt_bool(self.perron_ok)}",
            f"kmax: {self.kmax}",
            f"mmax: {self.mmax}",
            f"product_cap: {self.product_cap}",
            f"overall: {_fmt_bool(self.overall)}",
        ]
        return "\n".join(lines)


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def trace_condition(s: Spectrum, tol: float | None = None) -> bool:
    """First moment nonnegative (and real up to tolerance)."""
    if tol is None:
        tol = scale_tol(s.values)
    s1 = power_moment(s, 1)
    return s1.real >= -tol and abs(s1.imag) <= tol


def jll_condition(s: Spectrum, k: int, m: int, tol: float | None = None) -> bool:
    """Moment inequality (s_k)^m <= n^{m-1} s_{km}; requires reality."""
    if k < 1 or m < 1:
        raise ValueError(f"k and m must be >= 1, got ({k}, {m})")
    if tol is None:
        tol = scale_tol(s.values)
    if not check_reality(s, tol).holds:
        raise RealityViolation("moment inequalities need a conjugation-closed spectrum")
    lhs = power_moment(s, k).real ** m
    rhs = s.n ** (m - 1) * power_moment(s, k * m).real
    return lhs <= rhs + tol


def perron_condition(s: Spectrum, tol: float | None = None) -> bool:
    """Some real nonnegative entry attains the maximum modulus."""
    if tol is None:
        tol = scale_tol(s.values)
    mx = s.max_modulus()
    return any(
        abs(v.imag) <= tol and v.real >= -tol and mx <= v.real + tol
        for v in s.values
    )


def certify(
    s: Spectrum,
    kmax: int = DEFAULT_KMAX,
    mmax: int = DEFAULT_MMAX,
    product_cap: int = DEFAULT_PRODUCT_CAP,
    tol: float | None = None,
) -> ConditionCertificate:
    """Evaluate all four conditions; the moment box is k <= kmax, m <= mmax,
    restricted to k*m <= product_cap."""
    if kmax < 1 or mmax < 1:
        raise ValueError("kmax and mmax must be >= 1")
    if tol is None:
        tol = scale_tol(s.values)
    reality_ok = check_reality(s, tol).holds
    trace_ok = trace_condition(s, tol)
    perron_ok = perron_condition(s, tol)
    violations: list[tuple[int, int]] = []
    if reality_ok:
        for k in range(1, kmax + 1):
            for m in range(1, mmax + 1):
                if k * m > product_cap:
                    continue
                if not jll_condition(s, k, m, tol):
                    violations.append((k, m))
        jll_ok = not violations
    else:
        jll_ok = False
    return ConditionCertificate(
        reality_ok=reality_ok,
        trace_ok=trace_ok,
        jll_ok=jll_ok,
        jll_violations=tuple(violations),
        perron_ok=perron_ok,
        kmax=kmax,
        mmax=mmax,
        product_cap=product_cap,
        overall=reality_ok and trace_ok and jll_ok and perron_ok,
    )
