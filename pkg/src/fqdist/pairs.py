"""Pair statistics of a point set: how many ordered pairs land at a
square distance, at distance zero, or at a non-square distance.

`count_pairs` is the brute-force side: enumerate all ordered pairs and
classify ||x - y||.  `predict_from_spectrum` is the spectral side: the
same three numbers reconstructed exactly, with rational arithmetic, from
the zero / square / non-square masses of the indicator's spectrum and
the sign table of Gauss sum powers.  The two must agree on the nose on
every input, and the integrality of the spectral prediction is asserted
so a broken sign or kernel fails loudly instead of rounding quietly.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import gauss_closed, gauss_signs
from .errors import (EmptySetError, EnumerationTooLargeError,
                     TooManyPairsError, UnsupportedDimensionError)
from .geometry import ENUMERATION_CAP, PointSet, _sub_elementwise, norm_table
from .spectral import SpectralMass, dft_indicator

PAIR_CAP = 10**9
MASTER_CAP = 10**5


@dataclass(frozen=True)
class PairCounts:
    """Ordered-pair counts by the quadratic class of ||x - y||.
    Diagonal pairs x = y are included (they land in zr)."""

    sq: int
    zr: int
    nonsq: int

    def total(self) -> int:
        return self.sq + self.zr + self.nonsq


def _check_pair_budget(n: int):
    if n * n > PAIR_CAP:
        raise TooManyPairsError(f"{n}^2 ordered pairs exceed cap {PAIR_CAP}")


def count_pairs(A: PointSet) -> PairCounts:
    """Classify all ordered pairs of A by the quadratic class of the
    distance, by direct enumeration."""
    if len(A) == 0:
        raise EmptySetError("pair counts need a nonempty set")
    ctx, d, n = A.ctx, A.d, len(A)
    _check_pair_budget(n)
    pts = A.coords
    small = ctx.q**d <= ENUMERATION_CAP
    if small:
        ntab = norm_table(ctx, d)
        weights = np.array([ctx.q**(d - 1 - i) for i in range(d)],
                           dtype=np.int64)
    elif ctx.ell > 1:
        raise EnumerationTooLargeError(
            f"q^d = {ctx.q**d} exceeds cap {ENUMERATION_CAP}")
    sq = zr = 0
    chunk = max(1, (1 << 21) // max(n, 1))
    for s in range(0, n, chunk):
        diffs = _sub_elementwise(ctx, pts[s:s + chunk, None, :],
                                 pts[None, :, :])
        if small:
            norms = ntab[diffs.reshape(-1, d) @ weights]
        else:
            norms = (diffs**2).sum(axis=2).reshape(-1) % ctx.p
        etas = ctx.eta_table[norms]
        sq += int((etas == 1).sum())
        zr += int((norms == 0).sum())
    return PairCounts(sq=sq, zr=zr, nonsq=n * n - sq - zr)


def cone_lift_check(A: PointSet):
    """Count incidences of the zero cone on the lifted set E = A x F_q,
    and the value q * (2*sq + zr) it must equal.

    Returns (incidences, predicted).  The left side is a genuine
    enumeration over E x E; nothing is shared with `count_pairs` beyond
    the field tables.
    """
    if len(A) == 0:
        raise EmptySetError("cone lift needs a nonempty set")
    ctx, d, q = A.ctx, A.d, A.ctx.q
    n_lift = len(A) * q
    if n_lift * n_lift > PAIR_CAP:
        raise TooManyPairsError(
            f"lifted set has {n_lift}^2 ordered pairs, over cap {PAIR_CAP}")
    lifted = np.empty((n_lift, d + 1), dtype=np.int64)
    lifted[:, :d] = np.repeat(A.coords, q, axis=0)
    lifted[:, d] = np.tile(np.arange(q, dtype=np.int64), len(A))
    incidences = 0
    chunk = max(1, (1 << 21) // n_lift)
    if ctx.ell == 1:
        for s in range(0, n_lift, chunk):
            diffs = (lifted[s:s + chunk, None, :] - lifted[None, :, :]) % ctx.p
            cn = (diffs[:, :, :d]**2).sum(axis=2) - diffs[:, :, d]**2
            incidences += int((cn % ctx.p == 0).sum())
    else:
        add_tab, sub_tab, mul_tab = ctx.pair_tables
        for s in range(0, n_lift, chunk):
            diffs = _sub_elementwise(ctx, lifted[s:s + chunk, None, :],
                                     lifted[None, :, :])
            sqs = mul_tab[diffs, diffs]
            acc = sqs[:, :, 0]
            for i in range(1, d):
                acc = add_tab[acc, sqs[:, :, i]]
            incidences += int((sub_tab[acc, sqs[:, :, d]] == 0).sum())
    counts = count_pairs(A)
    predicted = q * (2 * counts.sq + counts.zr)
    return incidences, predicted


def predict_from_spectrum(A: PointSet, masses: SpectralMass) -> PairCounts:
    """Reconstruct the exact pair counts from the spectral masses.

    Uses only rational arithmetic plus the integer sign table; the
    result is asserted to clear to integers before it is returned.
    Requires d >= 2 (in one dimension the square class of a difference
    is not a function of the distance alone in the sense used here).
    """
    ctx, d, q, n = A.ctx, A.d, A.ctx.q, len(A)
    if d < 2:
        raise UnsupportedDimensionError("spectral prediction needs d >= 2")
    n_sq = Fraction(n * n)
    if d % 2 == 1:
        tau = gauss_signs(d + 1, ctx).tau
        sq_plus_half_zr = (n_sq / 2
                           + Fraction(tau * q**((3 * d + 1) // 2), 2) * masses.zero
                           - Fraction(tau * q**((d - 1) // 2) * n, 2))
        half_zr = (n_sq / (2 * q)
                   + Fraction(tau * q**((3 * d - 1) // 2), 2)
                   * (masses.plus - masses.minus))
    else:
        sigma_hi = gauss_signs(d + 2, ctx).sigma
        sigma_lo = gauss_signs(d, ctx).sigma
        sq_plus_half_zr = (n_sq / 2
                           + Fraction(sigma_hi * q**(3 * d // 2), 2)
                           * (masses.plus - masses.minus))
        half_zr = (n_sq / (2 * q)
                   + Fraction(sigma_lo * q**(3 * d // 2), 2) * masses.zero
                   - Fraction(sigma_lo * q**((d - 2) // 2) * n, 2))
    zr = 2 * half_zr
    sq = sq_plus_half_zr - half_zr
    if zr.denominator != 1 or sq.denominator != 1:
        raise ArithmeticError(
            f"spectral prediction is not integral: sq={sq}, zr={zr}")
    sq_i, zr_i = int(sq), int(zr)
    nonsq = n * n - sq_i - zr_i
    if min(sq_i, zr_i, nonsq) < 0:
        raise ArithmeticError(
            f"spectral prediction out of range: sq={sq_i}, zr={zr_i}")
    return PairCounts(sq=sq_i, zr=zr_i, nonsq=nonsq)


def sq_zr_fourier_residual(A: PointSet) -> float:
    """Residual of the direct spectral identity for sq + zr/2.

    Evaluates sq + zr/2 once by counting and once as
    |A|^2/2 + (q^(d-1) eta(-1)^d G_1^(d+1) / 2) *
        sum_m sum_{s != 0} eta^(d+1)(s) chi(s ||m||) |A_hat(m)|^2
    in floating point, and returns the absolute difference.
    """
    ctx, d, q, n = A.ctx, A.d, A.ctx.q, len(A)
    if q**d > MASTER_CAP:
        raise EnumerationTooLargeError(
            f"q^d = {q**d} exceeds direct-identity cap {MASTER_CAP}")
    counts = count_pairs(A)
    exact = counts.sq + counts.zr / 2
    power = np.abs(dft_indicator(A))**2
    mul_tab = ctx.pair_tables[2]
    odd_power = (d + 1) % 2 == 1
    inner = np.zeros(q, dtype=np.complex128)
    for s in range(1, q):
        coeff = ctx.eta(s) if odd_power else 1
        inner += coeff * ctx.chi_table[mul_tab[:, s]]
    weight = inner[norm_table(ctx, d)]
    coeff = (q**(d - 1) * ctx.eta(ctx.neg(1))**d * gauss_closed(ctx)**(d + 1)
             / 2)
    rhs = n * n / 2 + coeff * np.sum(weight * power)
    return abs(rhs - exact)
