"""Polynomial systems for realizability, and their serializers.

The realizability of coefficients (k_1..k_n) is the statement that some
entrywise-nonnegative A satisfies E_j(A) = k_j for all j; fixing a spectrum
replaces each k_j by a number.  This module builds those systems with the
E_j expanded symbolically as sums of principal minors, and writes them out
either in a native line-per-constraint grammar or as SMT-LIB 2 scripts for
external quantifier-elimination / satisfiability tools.  No solver is ever
invoked here.

Native grammar (UTF-8, '#' comments):

    kind general
    vars a11 a12 a21 a22
    1.0*a11^1 + 1.0*a22^1 = 0
    1.0*a11^1 >= 0

One constraint per line, ``poly (=|>=|>) 0``; monomials are
``coef*var^e*var^e`` joined by `` + `` with signed coefficients; a bare
coefficient is a constant term.  The symbolic expansion is capped at n = 5
(E_n alone has n! monomials).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from decimal import Decimal

from .errors import DimensionTooLarge, ParseError
from .spectra import CanonicalSpectrum
from .symfun import modified_symmetric

EMBED_NMAX = 5

SYSTEM_KINDS = ("general", "basic-closed", "basic-open")


class Polynomial:
    """Sparse multivariate polynomial over an ordered variable list.

    ``terms`` maps exponent tuples (one slot per variable) to nonzero real
    coefficients; zero coefficients are dropped on construction.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        nvars = len(self.variables)
        clean: dict[tuple[int, ...], float] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not match {nvars} variables")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = clean.get(exps, 0.0) + float(coef)
            if c != 0.0:
                clean[exps] = c
            elif exps in clean:
                del clean[exps]
        self.terms = clean

    @classmethod
    def zero(cls, variables) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables, c: float) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): float(c)})

    @classmethod
    def variable(cls, variables, name: str) -> "Polynomial":
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1.0})

    @classmethod
    def monomial(cls, variables, powers: dict[str, int], coef: float = 1.0) -> "Polynomial":
        variables = tuple(variables)
        exps = [0] * len(variables)
        for name, e in powers.items():
            exps[variables.index(name)] += int(e)
        return cls(variables, {tuple(exps): float(coef)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def _check_compatible(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise ValueError("polynomials are over different variable lists")

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = Polynomial.constant(self.variables, other)
        self._check_compatible(other)
        merged = dict(self.terms)
        for exps, coef in other.terms.items():
            merged[exps] = merged.get(exps, 0.0) + coef
        return Polynomial(self.variables, merged)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = Polynomial.constant(self.variables, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Polynomial(self.variables, {e: c * other for e, c in self.terms.items()})
        self._check_compatible(other)
        out: dict[tuple[int, ...], float] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0.0) + c1 * c2
        return Polynomial(self.variables, out)

    __rmul__ = __mul__

    def evaluate(self, assignment) -> float:
        """Evaluate at a mapping name -> value or a sequence in variable order."""
        if hasattr(assignment, "keys"):
            vec = [assignment[name] for name in self.variables]
        else:
            vec = list(assignment)
            if len(vec) != len(self.variables):
                raise ValueError("assignment length does not match variable count")
        total = 0.0
        for exps, coef in self.terms.items():
            term = coef
            for x, e in zip(vec, exps):
                if e:
                    term *= x**e
            total += term
        return total

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"Polynomial({_poly_text(self)!r})"


@dataclass(frozen=True)
class PolynomialSystem:
    """Equations (= 0), nonstrict (>= 0), and strict (> 0) constraints.

    ``kind`` is one of general, basic-closed (no strict constraints), or
    basic-open (only strict constraints).
    """

    variables: tuple[str, ...]
    equations: tuple[Polynomial, ...] = ()
    nonstrict: tuple[Polynomial, ...] = ()
    strict: tuple[Polynomial, ...] = ()
    kind: str = "general"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "equations", tuple(self.equations))
        object.__setattr__(self, "nonstrict", tuple(self.nonstrict))
        object.__setattr__(self, "strict", tuple(self.strict))
        if self.kind not in SYSTEM_KINDS:
            raise ValueError(f"unknown system kind {self.kind!r}")
        if self.kind == "basic-closed" and self.strict:
            raise ValueError("basic-closed systems cannot carry strict inequalities")
        if self.kind == "basic-open" and (self.equations or self.nonstrict):
            raise ValueError("basic-open systems carry only strict inequalities")
        for p in (*self.equations, *self.nonstrict, *self.strict):
            if p.variables != self.variables:
                raise ValueError("constraint variables do not match the system")

    def constraint_count(self) -> int:
        return len(self.equations) + len(self.nonstrict) + len(self.strict)


def matrix_variable_names(n: int) -> tuple[str, ...]:
    """Entry variable names a11..ann in row-major order."""
    return tuple(f"a{i + 1}{j + 1}" for i in range(n) for j in range(n))


def _permutation_sign(perm) -> int:
    inversions = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def symbolic_minor_sums(n: int, variables=None) -> list[Polynomial]:
    """E_1..E_n as polynomials in the matrix entry variables.

    Each E_j is the sum over all j-subsets S of the Leibniz expansion of the
    principal submatrix determinant on S.
    """
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    if n > EMBED_NMAX:
        raise DimensionTooLarge(f"symbolic minors limited to n <= {EMBED_NMAX}, got {n}")
    names = matrix_variable_names(n)
    if variables is None:
        variables = names
    variables = tuple(variables)
    index = {name: variables.index(name) for name in names}
    nvars = len(variables)
    out = []
    for j in range(1, n + 1):
        terms: dict[tuple[int, ...], float] = {}
        for subset in itertools.combinations(range(n), j):
            for perm in itertools.permutations(range(j)):
                exps = [0] * nvars
                for row_pos, col_pos in enumerate(perm):
                    name = f"a{subset[row_pos] + 1}{subset[col_pos] + 1}"
                    exps[index[name]] += 1
                key = tuple(exps)
                terms[key] = terms.get(key, 0.0) + _permutation_sign(perm)
        out.append(Polynomial(variables, terms))
    return out


def embed_coefficient_system(n: int) -> PolynomialSystem:
    """The coefficient-realizability system over a11..ann and k1..kn.

    Equations E_j(A) - k_j = 0 plus the entrywise constraints a_ij >= 0;
    projecting off the a variables leaves exactly the realizable
    coefficient tuples.
    """
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    if n > EMBED_NMAX:
        raise DimensionTooLarge(f"symbolic embedding limited to n <= {EMBED_NMAX}, got {n}")
    variables = matrix_variable_names(n) + tuple(f"k{j}" for j in range(1, n + 1))
    minors = symbolic_minor_sums(n, variables)
    equations = tuple(
        minors[j - 1] - Polynomial.variable(variables, f"k{j}") for j in range(1, n + 1)
    )
    nonstrict = tuple(Polynomial.variable(variables, name) for name in matrix_variable_names(n))
    return PolynomialSystem(variables, equations, nonstrict, (), kind="general")


def embed_spectral_system(c: CanonicalSpectrum) -> PolynomialSystem:
    """The membership system for one spectrum: E_j(A) = S_{j,k} targets.

    Only the matrix entries remain free; satisfiability of this system is
    the statement that some nonnegative matrix realizes the spectrum.
    """
    n = c.n
    if n > EMBED_NMAX:
        raise DimensionTooLarge(f"symbolic embedding limited to n <= {EMBED_NMAX}, got {n}")
    variables = matrix_variable_names(n)
    minors = symbolic_minor_sums(n, variables)
    equations = tuple(
        minors[j - 1] - modified_symmetric(c, j) for j in range(1, n + 1)
    )
    nonstrict = tuple(Polynomial.variable(variables, name) for name in variables)
    return PolynomialSystem(variables, equations, nonstrict, (), kind="general")


# ---------------------------------------------------------------------------
# native text format


def _fmt_coef(c: float) -> str:
    return repr(float(c))


def _poly_text(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for exps in sorted(p.terms, reverse=True):
        coef = p.terms[exps]
        factors = [_fmt_coef(coef)]
        factors += [
            f"{name}^{e}" for name, e in zip(p.variables, exps) if e
        ]
        parts.append("*".join(factors))
    return " + ".join(parts)


def serialize_system(sys: PolynomialSystem) -> str:
    """Write a system in the native line-per-constraint grammar."""
    lines = [f"kind {sys.kind}"]
    lines.append(("vars " + " ".join(sys.variables)).rstrip())
    lines += [f"{_poly_text(p)} = 0" for p in sys.equations]
    lines += [f"{_poly_text(p)} >= 0" for p in sys.nonstrict]
    lines += [f"{_poly_text(p)} > 0" for p in sys.strict]
    return "\n".join(lines) + "\n"


_CONSTRAINT_RE = re.compile(r"^(?P<lhs>.*?)\s*(?P<op>>=|=|>)\s*0$")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _parse_term(term: str, variables, index, lineno: int, column: int) -> tuple[tuple[int, ...], float]:
    factors = term.split("*")
    try:
        coef = float(factors[0])
    except ValueError:
        raise ParseError(f"bad coefficient {factors[0]!r}", lineno, column) from None
    exps = [0] * len(variables)
    for factor in factors[1:]:
        name, caret, power = factor.partition("^")
        if not caret:
            raise ParseError(f"monomial factor {factor!r} lacks an exponent", lineno, column)
        if name not in index:
            raise ParseError(f"unknown variable {name!r}", lineno, column)
        try:
            e = int(power)
        except ValueError:
            raise ParseError(f"bad exponent {power!r}", lineno, column) from None
        if e < 1:
            raise ParseError(f"exponent must be >= 1, got {e}", lineno, column)
        exps[index[name]] += e
    return tuple(exps), coef


def parse_system(text: str) -> PolynomialSystem:
    """Parse the native grammar back into a PolynomialSystem."""
    kind = "general"
    variables: tuple[str, ...] | None = None
    index: dict[str, int] = {}
    buckets: dict[str, list[Polynomial]] = {"=": [], ">=": [], ">": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("kind "):
            kind = line[5:].strip()
            if kind not in SYSTEM_KINDS:
                raise ParseError(f"unknown system kind {kind!r}", lineno, 6)
            continue
        if line == "vars" or line.startswith("vars "):
            names = line[4:].split()
            for name in names:
                if not _NAME_RE.match(name):
                    raise ParseError(f"bad variable name {name!r}", lineno, line.find(name) + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, 6)
            variables = tuple(names)
            index = {name: i for i, name in enumerate(variables)}
            continue
        m = _CONSTRAINT_RE.match(line)
        if not m:
            raise ParseError("constraint must end with '= 0', '>= 0', or '> 0'", lineno, len(line))
        if variables is None:
            raise ParseError("constraint appears before a 'vars' line", lineno, 1)
        lhs = m.group("lhs").strip()
        terms: dict[tuple[int, ...], float] = {}
        column = 1
        if lhs != "0":
            for chunk in lhs.split(" + "):
                column = raw.find(chunk) + 1
                exps, coef = _parse_term(chunk.strip(), variables, index, lineno, column)
                terms[exps] = terms.get(exps, 0.0) + coef
        buckets[m.group("op")].append(Polynomial(variables, terms))
    if variables is None:
        variables = ()
    try:
        return PolynomialSystem(
            variables=variables,
            equations=tuple(buckets["="]),
            nonstrict=tuple(buckets[">="]),
            strict=tuple(buckets[">"]),
            kind=kind,
        )
    except ValueError as exc:
        raise ParseError(str(exc), line=1, column=1) from None


# ---------------------------------------------------------------------------
# SMT-LIB 2 export


def _smt_number(x: float) -> str:
    if x == 0:
        return "0.0"
    if x < 0:
        return f"(- {_smt_number(-x)})"
    s = format(Decimal(repr(float(x))), "f")
    if "." not in s:
        s += ".0"
    return s


def _smt_term(coef: float, exps, variables) -> str:
    factors = [_smt_number(coef)]
    for name, e in zip(variables, exps):
        factors.extend([name] * e)
    if len(factors) == 1:
        return factors[0]
    return "(* " + " ".join(factors) + ")"


def _smt_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0.0"
    parts = [_smt_term(p.terms[e], e, p.variables) for e in sorted(p.terms, reverse=True)]
    if len(parts) == 1:
        return parts[0]
    return "(+ " + " ".join(parts) + ")"


def serialize_smt(sys: PolynomialSystem, existential_vars=None) -> str:
    """Emit an SMT-LIB 2 script in quantifier-free nonlinear real arithmetic.

    Satisfiability of the script is the existential statement over the
    declared variables.  ``existential_vars`` (default: all variables) are
    declared first and recorded in a comment so external tools can separate
    the quantified block from parameters.
    """
    if existential_vars is None:
        existential_vars = sys.variables
    existential = tuple(existential_vars)
    extra = set(existential) - set(sys.variables)
    if extra:
        raise ValueError(f"existential variables {sorted(extra)} are not system variables")
    parameters = tuple(v for v in sys.variables if v not in set(existential))
    lines = ["(set-logic QF_NRA)"]
    if existential:
        lines.append("; existential: " + " ".join(existential))
    if parameters:
        lines.append("; parameters: " + " ".join(parameters))
    for name in existential + parameters:
        lines.append(f"(declare-const {name} Real)")
    for p in sys.equations:
        lines.append(f"(assert (= {_smt_poly(p)} 0))")
    for p in sys.nonstrict:
        lines.append(f"(assert (>= {_smt_poly(p)} 0))")
    for p in sys.strict:
        lines.append(f"(assert (> {_smt_poly(p)} 0))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
