"""Power sums of eigenvalues from the characteristic polynomial (Newton's identities)."""

from __future__ import annotations

from .ccdp import DEFAULT_MAX_WIDTH, Decomposition, characteristic_polynomial
from .errors import NotMonic, TwCountError
from .graphs import SquareIntMatrix
from .polynomial import IntPolynomial


def elementary_symmetric(chi: IntPolynomial) -> list[int]:
    """``[e_0, ..., e_n]`` of the roots of a monic ``chi``: ``c_{n-i} = (-1)**i e_i``."""
    if not chi.is_monic():
        raise NotMonic(f"characteristic polynomial {chi} is not monic")
    n = chi.degree
    return [(-1) ** i * chi.coefficient(n - i) for i in range(n + 1)]


def power_sums_from_charpoly(chi: IntPolynomial, K: int) -> list[int]:
    """``[p_1, ..., p_K]`` where ``p_k`` is the sum of k-th powers of the roots of ``chi``.

    Uses ``p_k = sum_{i=1}^{min(k-1,n)} (-1)**(i-1) e_i p_{k-i} + (-1)**(k-1) k e_k``,
    the last term present only for ``k <= n``.  ``p_0 = n`` is never needed
    because the ``k e_k`` term stands in for it.
    """
    if K < 1:
        raise TwCountError("K must be at least 1")
    e = elementary_symmetric(chi)
    n = chi.degree
    p = [n]
    for k in range(1, K + 1):
        acc = 0
        for i in range(1, min(k - 1, n) + 1):
            acc += (-1) ** (i - 1) * e[i] * p[k - i]
        if k <= n:
            acc += (-1) ** (k - 1) * k * e[k]
        p.append(acc)
    return p[1:]


def newton_series_residual(chi: IntPolynomial, power_sums: list[int]) -> IntPolynomial:
    """``n S(t) - t S'(t) - S(t) P(t)`` truncated at degree ``len(power_sums)``.

    ``S(t) = sum e_k t^k`` and ``P(t) = sum_{k>=0} (-1)**k p_k t^k`` with
    ``p_0 = n``.  Zero exactly when the power sums are right through that degree.
    """
    e = elementary_symmetric(chi)
    n = chi.degree
    K = len(power_sums)
    S = IntPolynomial(e)
    P = IntPolynomial([n] + [(-1) ** k * pk for k, pk in enumerate(power_sums, start=1)])
    residual = S * n - S.derivative().shift(1) - S * P
    return residual.truncate(K)


def trace_power(
    m: SquareIntMatrix, k: int, nt: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH
) -> int:
    """``trace(m**k)`` from the characteristic polynomial, without forming powers."""
    if k < 1:
        raise TwCountError("k must be at least 1")
    if m.n == 0:
        return 0
    return power_sums_from_charpoly(characteristic_polynomial(m, nt, max_width), k)[k - 1]
