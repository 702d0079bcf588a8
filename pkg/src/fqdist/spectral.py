"""Fourier transforms of indicator functions and exact spectral masses.

Everything downstream rests on splitting the frequency space F_q^d into
three pieces by the quadratic class of the norm: zero, square, non-square.
The mass of an indicator's spectrum on each piece is a nonnegative
rational with denominator q^(2d), and it can be computed exactly with
integer arithmetic: the character sum of each piece against a fixed
vector v collapses, one scaling class at a time, to (q - 1) or -1.

Two independent pipelines are kept alive on purpose.  The exact one goes
through integer kernel tables and `Fraction`; the numeric one goes
through a complex DFT.  They must agree to float precision, and the
tests hold them to that.
"""

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import gauss_closed
from .errors import EmptySetError, EnumerationTooLargeError, WrongParityError
from .field import FieldCtx, make_field
from .geometry import (PointSet, _sub_elementwise, cone_norm, norm,
                       norm_table, pack_weights, space_coords)

DFT_CAP = 10**6

_KERNEL_MEMO = {}
_INNER_SUM_MEMO = {}

CACHE_ENV_VAR = "FQDIST_KERNEL_CACHE"


def _check_transform_size(q: int, d: int):
    if q**d > DFT_CAP:
        raise EnumerationTooLargeError(
            f"transform space q^d = {q**d} exceeds cap {DFT_CAP}")


def _dot_chunks(ctx, rows: np.ndarray, cols: np.ndarray, chunk: int = None):
    """Yield (start, dots) where dots[i, j] is the field dot product of
    rows[start + i] with cols[j], as packed element indices."""
    nrows, ncols = rows.shape[0], cols.shape[0]
    if chunk is None:
        chunk = max(1, (1 << 22) // max(ncols, 1))
    if ctx.ell == 1:
        colsT = cols.T
        for s in range(0, nrows, chunk):
            block = rows[s:s + chunk]
            yield s, (block @ colsT) % ctx.p
    else:
        add_tab, _, mul_tab = ctx.pair_tables
        d = rows.shape[1]
        for s in range(0, nrows, chunk):
            block = rows[s:s + chunk]
            acc = mul_tab[block[:, 0][:, None], cols[:, 0][None, :]]
            for i in range(1, d):
                term = mul_tab[block[:, i][:, None], cols[:, i][None, :]]
                acc = add_tab[acc, term]
            yield s, acc


def dft_indicator(A: PointSet) -> np.ndarray:
    """All Fourier coefficients of the indicator of A.

    Returns a complex array over packed frequencies m with
    out[m] = q^(-d) sum_{x in A} chi(-m . x).
    """
    ctx, d = A.ctx, A.d
    _check_transform_size(ctx.q, d)
    volume = ctx.q**d
    freqs = space_coords(ctx, d)
    conj_chi = np.conj(ctx.chi_table)
    out = np.empty(volume, dtype=np.complex128)
    pts = A.coords
    for start, dots in _dot_chunks(ctx, freqs, pts):
        out[start:start + dots.shape[0]] = conj_chi[dots].sum(axis=1)
    out /= volume
    return out


class KernelTable:
    """Integer character sums of the three norm classes against every v.

    zero[v]  = sum over {m : ||m|| = 0}        of chi(m . v)
    plus[v]  = sum over {m : eta(||m||) = +1}  of chi(m . v)
    minus[v] = sum over {m : eta(||m||) = -1}  of chi(m . v)

    All three are exact integers: the nonzero frequencies split into
    scaling classes {t * rep : t != 0} that stay inside one norm class,
    and each class contributes q - 1 when rep . v = 0 and -1 otherwise.
    Arrays are indexed by the packed encoding of v.
    """

    def __init__(self, ctx: FieldCtx, d: int, zero, plus, minus):
        self.ctx = ctx
        self.d = d
        self.zero = zero
        self.plus = plus
        self.minus = minus

    def save(self, path):
        """Write the table to an .npz archive (portable across runs)."""
        np.savez_compressed(
            path, p=self.ctx.p, ell=self.ctx.ell, d=self.d,
            modulus=np.asarray(self.ctx.modulus, dtype=np.int64),
            zero=self.zero, plus=self.plus, minus=self.minus)

    @classmethod
    def load(cls, path):
        with np.load(path) as data:
            ctx = make_field(int(data["p"]), int(data["ell"]))
            if tuple(int(c) for c in data["modulus"]) != ctx.modulus:
                raise ValueError(f"cache {path} uses a non-canonical modulus")
            return cls(ctx, int(data["d"]),
                       data["zero"].copy(), data["plus"].copy(),
                       data["minus"].copy())


def _scaling_class_reps(ctx, d: int) -> np.ndarray:
    """One representative per scaling class of nonzero vectors: the
    vectors whose first nonzero coordinate is 1.  Shape (R, d) with
    R = (q^d - 1) / (q - 1)."""
    q = ctx.q
    blocks = []
    for lead in range(d):
        free = d - 1 - lead
        block = np.zeros((q**free, d), dtype=np.int64)
        block[:, lead] = 1
        rest = np.arange(q**free, dtype=np.int64)
        for j in range(free):
            block[:, lead + 1 + j] = (rest // q**(free - 1 - j)) % q
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def build_kernels(ctx: FieldCtx, d: int) -> KernelTable:
    """Exact integer kernel tables for dimension d over ctx."""
    _check_transform_size(ctx.q, d)
    q = ctx.q
    volume = q**d
    reps = _scaling_class_reps(ctx, d)
    weights = pack_weights(q, d)
    ntab = norm_table(ctx, d)
    rep_eta = ctx.eta_table[ntab[reps @ weights]]
    cols = space_coords(ctx, d)
    # the origin frequency has zero norm and contributes chi(0) = 1 at every v
    zero = np.ones(volume, dtype=np.int64)
    plus = np.zeros(volume, dtype=np.int64)
    minus = np.zeros(volume, dtype=np.int64)
    buckets = ((0, zero), (1, plus), (-1, minus))
    for start, dots in _dot_chunks(ctx, reps, cols):
        hit = dots == 0
        etas = rep_eta[start:start + dots.shape[0]]
        for sign, target in buckets:
            rows = np.nonzero(etas == sign)[0]
            if rows.size:
                cnt = hit[rows].sum(axis=0, dtype=np.int64)
                target += q * cnt - rows.size
    return KernelTable(ctx, d, zero, plus, minus)


def kernels_for(ctx: FieldCtx, d: int) -> KernelTable:
    """Memoized kernel tables; optionally persisted to disk.

    If the environment variable FQDIST_KERNEL_CACHE names a directory,
    tables are loaded from / saved to kern_p<p>_e<ell>_d<d>.npz there.
    """
    key = (ctx.p, ctx.ell, d)
    table = _KERNEL_MEMO.get(key)
    if table is not None:
        return table
    cache_dir = os.environ.get(CACHE_ENV_VAR)
    path = None
    if cache_dir:
        path = os.path.join(
            cache_dir, f"kern_p{ctx.p}_e{ctx.ell}_d{d}.npz")
        if os.path.exists(path):
            table = KernelTable.load(path)
    if table is None:
        table = build_kernels(ctx, d)
        if path is not None:
            os.makedirs(cache_dir, exist_ok=True)
            table.save(path)
    _KERNEL_MEMO[key] = table
    return table


@dataclass(frozen=True)
class SpectralMass:
    """Spectrum mass of an indicator on the three norm classes; each is
    an exact nonnegative rational with denominator dividing q^(2d)."""

    zero: Fraction
    plus: Fraction
    minus: Fraction

    def total(self) -> Fraction:
        return self.zero + self.plus + self.minus


def _diff_counts(A: PointSet) -> np.ndarray:
    """Multiset of pairwise differences x - y over A x A, as counts
    indexed by the packed difference."""
    ctx, d = A.ctx, A.d
    volume = ctx.q**d
    weights = pack_weights(ctx.q, d)
    pts = A.coords
    counts = np.zeros(volume, dtype=np.int64)
    chunk = max(1, (1 << 22) // max(len(A), 1))
    for s in range(0, len(A), chunk):
        diffs = _sub_elementwise(ctx, pts[s:s + chunk, None, :],
                                 pts[None, :, :])
        packed = diffs.reshape(-1, d) @ weights
        counts += np.bincount(packed, minlength=volume)
    return counts


def spectral_masses_exact(A: PointSet, kernels: KernelTable) -> SpectralMass:
    """Exact spectral masses of A via the integer kernel tables.

    zero + plus + minus always equals |A| / q^d (Plancherel), and each
    summand is nonnegative; both facts are enforced here.
    """
    if len(A) == 0:
        raise EmptySetError("spectral masses need a nonempty set")
    ctx, d = A.ctx, A.d
    if kernels.ctx is not ctx or kernels.d != d:
        raise ValueError("kernel table does not match the point set")
    counts = _diff_counts(A)
    denom = ctx.q**(2 * d)
    mass = SpectralMass(
        zero=Fraction(int(counts @ kernels.zero), denom),
        plus=Fraction(int(counts @ kernels.plus), denom),
        minus=Fraction(int(counts @ kernels.minus), denom))
    if min(mass.zero, mass.plus, mass.minus) < 0:
        raise ArithmeticError("negative spectral mass; kernel table corrupt")
    if mass.total() != Fraction(len(A), ctx.q**d):
        raise ArithmeticError("spectral masses violate Plancherel")
    return mass


def masses_numeric(A: PointSet):
    """(zero, plus, minus) masses via the complex DFT; cross-check only."""
    ctx, d = A.ctx, A.d
    ahat = dft_indicator(A)
    power = np.abs(ahat)**2
    etas = ctx.eta_table[norm_table(ctx, d)]
    return (float(power[etas == 0].sum()),
            float(power[etas == 1].sum()),
            float(power[etas == -1].sum()))


def _inner_sum_table(ctx, n: int, denom_scale: int) -> np.ndarray:
    """Table over t in F_q of sum_{s != 0} eta^n(s) chi(t / (c*s)) where
    c is the field element denom_scale mod p (c = +-4 in practice)."""
    key = (ctx.p, ctx.ell, n % 2, denom_scale % ctx.p)
    cached = _INNER_SUM_MEMO.get(key)
    if cached is not None:
        return cached
    c = denom_scale % ctx.p
    mul_tab = ctx.pair_tables[2]
    out = np.zeros(ctx.q, dtype=np.complex128)
    for s in range(1, ctx.q):
        coeff = ctx.eta(s) if n % 2 else 1
        args = mul_tab[:, ctx.inv(ctx.mul(c, s))]
        out += coeff * ctx.chi_table[args]
    _INNER_SUM_MEMO[key] = out
    return out


def cone_fourier_formula(ctx, n: int, m) -> complex:
    """Closed-form Fourier coefficient of the cone {x : ||x||_C = 0} in
    F_q^n, evaluated at the frequency vector m."""
    t = cone_norm(ctx, m)
    inner = _inner_sum_table(ctx, n, -4)
    g1 = gauss_closed(ctx)
    value = ctx.q**(-n - 1) * ctx.eta(ctx.neg(1)) * g1**n * inner[t]
    if all(c == 0 for c in m):
        value += 1.0 / ctx.q
    return complex(value)


def sphere0_fourier_formula(ctx, d: int, m) -> complex:
    """Closed-form Fourier coefficient of the zero sphere {x : ||x|| = 0}
    in F_q^d, evaluated at the frequency vector m."""
    t = norm(ctx, m)
    inner = _inner_sum_table(ctx, d, 4)
    g1 = gauss_closed(ctx)
    eta_m1 = ctx.eta(ctx.neg(1))
    value = ctx.q**(-d - 1) * eta_m1**d * g1**d * inner[t]
    if all(c == 0 for c in m):
        value += 1.0 / ctx.q
    return complex(value)


def verify_counting_lemma(E: PointSet, V: PointSet):
    """Both sides of: #{(x, y) in E^2 : x - y in V} equals
    q^(2n) sum_m V_hat(m) |E_hat(m)|^2.

    Returns (direct, fourier) with direct an integer and fourier the
    real part of the spectral side.
    """
    if E.ctx is not V.ctx or E.d != V.d:
        raise ValueError("E and V must live in the same space")
    ctx, d = E.ctx, E.d
    _check_transform_size(ctx.q, d)
    volume = ctx.q**d
    indicator = np.zeros(volume, dtype=np.int64)
    indicator[V.packed()] = 1
    direct = int(_diff_counts(E) @ indicator)
    vhat = dft_indicator(V)
    ehat = dft_indicator(E)
    fourier = volume**2 * np.sum(vhat * np.abs(ehat)**2)
    return direct, float(fourier.real)


@dataclass(frozen=True)
class ZeroMassReport:
    """Exact zero-norm spectral mass against its lower and upper bounds."""

    mass_zero: Fraction
    lower: Fraction
    upper_plancherel: Fraction
    upper_refined: Fraction
    holds: bool
    slack_lower: Fraction
    slack_upper: Fraction


def zero_mass_bounds_check(A: PointSet) -> ZeroMassReport:
    """Check |A|^2/q^(2d) <= mass <= min(|A|/q^d, |A|/q^(d+1) + |A|^2/q^((3d+1)/2))
    for the exact zero-norm mass; odd dimension d >= 3 only."""
    d, q, n = A.d, A.ctx.q, len(A)
    if d % 2 == 0 or d < 3:
        raise WrongParityError(f"refined zero-mass bound needs odd d >= 3, got d={d}")
    mass = spectral_masses_exact(A, kernels_for(A.ctx, d)).zero
    lower = Fraction(n * n, q**(2 * d))
    upper_p = Fraction(n, q**d)
    upper_r = Fraction(n, q**(d + 1)) + Fraction(n * n, q**((3 * d + 1) // 2))
    upper = min(upper_p, upper_r)
    return ZeroMassReport(
        mass_zero=mass, lower=lower, upper_plancherel=upper_p,
        upper_refined=upper_r, holds=lower <= mass <= upper,
        slack_lower=mass - lower, slack_upper=upper - mass)
