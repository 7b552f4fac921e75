"""Shared test utilities: independent oracles and random generators."""

from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import linear_sum_assignment

from niepkit import NonnegMatrix, Polynomial, PolynomialSystem, Spectrum


def subset_symmetric(values, j: int) -> complex:
    """O(2^n) subset-sum oracle for the elementary symmetric functions."""
    total = complex(0.0)
    for combo in itertools.combinations(values, j):
        prod = complex(1.0)
        for v in combo:
            prod *= v
        total += prod
    return total


def rel_close(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * (1.0 + max(abs(x), abs(y)))


def spectrum_distance(a: Spectrum, b: Spectrum) -> float:
    """Euclidean distance under the optimal eigenvalue matching."""
    assert a.n == b.n
    cost = np.array([[abs(x - y) ** 2 for y in b.values] for x in a.values])
    rows, cols = linear_sum_assignment(cost)
    return float(np.sqrt(cost[rows, cols].sum()))


def random_nonneg(rng: np.random.Generator, n: int, kind: str = "uniform01") -> NonnegMatrix:
    if kind == "exponential":
        m = rng.exponential(1.0, (n, n))
    elif kind == "sparse":
        m = rng.random((n, n)) * (rng.random((n, n)) < 0.5)
    else:
        m = rng.random((n, n))
    return NonnegMatrix(m)


def random_polynomial(rng: np.random.Generator, variables: tuple[str, ...]) -> Polynomial:
    terms = {}
    for _ in range(rng.integers(0, 5)):
        exps = tuple(int(e) for e in rng.integers(0, 4, len(variables)))
        coef = float(np.round(rng.normal(scale=10.0), 6))
        if coef:
            terms[exps] = coef
    return Polynomial(variables, terms)


def random_system(rng: np.random.Generator) -> PolynomialSystem:
    nvars = int(rng.integers(1, 5))
    variables = tuple(f"x{i}" for i in range(1, nvars + 1))
    kind = ["general", "basic-closed", "basic-open"][int(rng.integers(0, 3))]
    polys = lambda lo, hi: tuple(
        random_polynomial(rng, variables) for _ in range(rng.integers(lo, hi))
    )
    if kind == "basic-open":
        return PolynomialSystem(variables, (), (), polys(1, 4), kind=kind)
    if kind == "basic-closed":
        return PolynomialSystem(variables, polys(0, 3), polys(1, 4), (), kind=kind)
    return PolynomialSystem(variables, polys(0, 3), polys(0, 3), polys(0, 3), kind=kind)
