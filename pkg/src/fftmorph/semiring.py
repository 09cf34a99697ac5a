"""Max-plus scalars, integer-coefficient polynomials, and the degree map.

The max-plus semiring here is the non-negative integers together with -inf
(additive identity of max).  Scalars are plain Python ints, with
``float("-inf")`` as the -inf element, so ``max`` and ``+`` behave correctly
without any wrapping.

Polynomials are dense 1-D int64 coefficient vectors indexed by degree.
Trailing zeros are permitted; ``degree`` scans from the top index down.
The degree map sends polynomial product to max-plus product (ordinary +)
and polynomial sum to max-plus sum (max), which is what lets a max of sums
be computed as the degree of a sum of products.
"""

from __future__ import annotations

import numpy as np

from . import fft_conv

NEG_INF = float("-inf")

# Coefficients are counts; keep them comfortably inside the range where the
# FFT path recovers integers exactly.
COEFF_LIMIT = 2**53

MaxPlus = int | float  # int, or NEG_INF


def is_maxplus(a: MaxPlus) -> bool:
    return a == NEG_INF or (isinstance(a, (int, np.integer)) and a >= 0)


def _check_coeffs(coeffs: np.ndarray) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if coeffs.ndim != 1:
        raise ValueError("polynomial coefficients must be a 1-D vector")
    if coeffs.size == 0:
        raise ValueError("polynomial needs at least one coefficient")
    if (coeffs < 0).any():
        raise ValueError("polynomial coefficients must be non-negative")
    if (coeffs >= COEFF_LIMIT).any():
        raise OverflowError("polynomial coefficient exceeds the exactness budget")
    return coeffs


def degree(p: np.ndarray) -> MaxPlus:
    """Highest index with a nonzero coefficient, or NEG_INF for the zero polynomial."""
    p = _check_coeffs(p)
    nz = np.flatnonzero(p)
    if nz.size == 0:
        return NEG_INF
    return int(nz[-1])


def monomial(a: MaxPlus) -> np.ndarray:
    """Coefficient vector of x^a; NEG_INF maps to the zero polynomial."""
    if not is_maxplus(a):
        raise ValueError(f"{a!r} is not a max-plus scalar")
    if a == NEG_INF:
        return np.zeros(1, dtype=np.int64)
    p = np.zeros(int(a) + 1, dtype=np.int64)
    p[int(a)] = 1
    return p


def poly_add(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    p = _check_coeffs(p)
    q = _check_coeffs(q)
    n = max(p.size, q.size)
    out = np.zeros(n, dtype=np.int64)
    out[: p.size] += p
    out[: q.size] += q
    return _check_coeffs(out)


def poly_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Product of polynomials = full-mode convolution of coefficient vectors."""
    p = _check_coeffs(p)
    q = _check_coeffs(q)
    return _check_coeffs(fft_conv.direct_full(p, q))


def maxplus_sum_of_products(pairs: list[tuple[MaxPlus, MaxPlus]]) -> MaxPlus:
    """max_i(a_i + b_i) evaluated as the degree of sum_i x^{a_i} * x^{b_i}."""
    if len(pairs) < 1:
        raise ValueError("need at least one pair")
    acc = np.zeros(1, dtype=np.int64)
    for a, b in pairs:
        acc = poly_add(acc, poly_mul(monomial(a), monomial(b)))
    return degree(acc)
