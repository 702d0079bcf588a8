"""Vectors and point sets in F_q^d.

Covers the distance form ||v|| = sum v_i^2, the cone form
||x||_C = x_1^2 + ... + x_{n-1}^2 - x_n^2, enumeration of the zero sphere
and the cone, and (pinned) distance sets.

Points are tuples of element indices.  A PointSet keeps its points
deduplicated and sorted lexicographically, so hashes, file dumps and
report output are deterministic.  Bulk work uses numpy over packed vector
indices: a vector (c_0, ..., c_{d-1}) packs to sum c_i * q^(d-1-i), which
makes packed order agree with tuple order.
"""

import numpy as np

from .errors import (
    DimensionMismatchError,
    DimensionTooSmallError,
    EmptySetError,
    EnumerationTooLargeError,
)

ENUMERATION_CAP = 10 ** 7

# per-(p, ell, d) caches of packed-index tables; contexts are canonical
# via make_field, so the key cannot collide
_NORM_TABLES = {}
_CONE_TABLES = {}


def pack_weights(q, d):
    return np.array([q ** (d - 1 - i) for i in range(d)], dtype=np.int64)


def pack_coords(q, coords):
    """Packed indices of an (n, d) coordinate array (c_0 most significant)."""
    coords = np.asarray(coords, dtype=np.int64)
    return coords @ pack_weights(q, coords.shape[-1])


def unpack_coords(q, d, packed):
    """Inverse of pack_coords; returns an (n, d) int64 array."""
    packed = np.asarray(packed, dtype=np.int64)
    out = np.empty(packed.shape + (d,), dtype=np.int64)
    for i in range(d - 1, -1, -1):
        out[..., i] = packed % q
        packed = packed // q
    return out


class PointSet:
    """Deduplicated point set in F_q^d with canonical (lexicographic) order."""

    def __init__(self, ctx, d, points):
        if d < 1:
            raise DimensionTooSmallError(f"dimension {d} < 1")
        q = ctx.q
        cleaned = set()
        for pt in points:
            pt = tuple(int(c) for c in pt)
            if len(pt) != d:
                raise DimensionMismatchError(
                    f"point {pt} has {len(pt)} coordinates, expected {d}")
            if any(not 0 <= c < q for c in pt):
                raise ValueError(f"point {pt} has coordinates outside [0, {q})")
            cleaned.add(pt)
        self.ctx = ctx
        self.d = d
        self.points = tuple(sorted(cleaned))
        self._coords = None

    @property
    def coords(self):
        """(n, d) int64 coordinate array, cached."""
        if self._coords is None:
            self._coords = np.array(self.points, dtype=np.int64).reshape(len(self.points), self.d)
        return self._coords

    def packed(self):
        return pack_coords(self.ctx.q, self.coords)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt):
        return tuple(pt) in set(self.points)

    def __eq__(self, other):
        return (isinstance(other, PointSet) and self.ctx is other.ctx
                and self.d == other.d and self.points == other.points)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.ell, self.d, self.points))

    def __repr__(self):
        return f"PointSet(q={self.ctx.q}, d={self.d}, n={len(self)})"

    def translate(self, t):
        """The translate A + t."""
        add = self.ctx.add
        t = tuple(t)
        if len(t) != self.d:
            raise DimensionMismatchError("translation vector has wrong length")
        return PointSet(self.ctx, self.d,
                        [tuple(add(c, s) for c, s in zip(pt, t)) for pt in self.points])


def norm(ctx, v):
    """||v|| = v_1^2 + ... + v_d^2 as an element index."""
    acc = 0
    for c in v:
        acc = ctx.add(acc, ctx.mul(c, c))
    return acc


def cone_norm(ctx, x):
    """||x||_C = x_1^2 + ... + x_{n-1}^2 - x_n^2; zero exactly on the cone."""
    if len(x) < 2:
        raise DimensionTooSmallError("cone form needs at least 2 coordinates")
    acc = 0
    for c in x[:-1]:
        acc = ctx.add(acc, ctx.mul(c, c))
    return ctx.sub(acc, ctx.mul(x[-1], x[-1]))


def _check_cap(q, d):
    if q ** d > ENUMERATION_CAP:
        raise EnumerationTooLargeError(
            f"q^d = {q ** d} exceeds enumeration cap {ENUMERATION_CAP}")


def _square_values(ctx):
    q = ctx.q
    return np.array([ctx.mul(a, a) for a in range(q)], dtype=np.int64)


def norm_table(ctx, d):
    """Array over packed indices v of the element index of ||v||.

    Built dimension by dimension: with c_0 most significant, index
    pre * q + c extends prefix norm N[pre] by c^2.
    """
    key = (ctx.p, ctx.ell, d)
    tab = _NORM_TABLES.get(key)
    if tab is None:
        _check_cap(ctx.q, d)
        q = ctx.q
        sq = _square_values(ctx)
        tab = sq.copy()
        for _ in range(d - 1):
            tab = _add_elementwise(ctx, tab[:, None], sq[None, :]).reshape(-1)
        tab.setflags(write=False)
        _NORM_TABLES[key] = tab
    return tab


def cone_norm_table(ctx, n):
    """Array over packed indices x of the element index of ||x||_C."""
    if n < 2:
        raise DimensionTooSmallError("cone form needs at least 2 coordinates")
    key = (ctx.p, ctx.ell, n)
    tab = _CONE_TABLES.get(key)
    if tab is None:
        _check_cap(ctx.q, n)
        sq = _square_values(ctx)
        neg_sq = np.array([ctx.neg(int(s)) for s in sq], dtype=np.int64)
        prefix = norm_table(ctx, n - 1)
        tab = _add_elementwise(ctx, prefix[:, None], neg_sq[None, :]).reshape(-1)
        tab.setflags(write=False)
        _CONE_TABLES[key] = tab
    return tab


def _add_elementwise(ctx, a, b):
    if ctx.ell == 1:
        return (a + b) % ctx.p
    add_tab = ctx.pair_tables[0]
    return add_tab[a, b].astype(np.int64)


def _sub_elementwise(ctx, a, b):
    if ctx.ell == 1:
        return (a - b) % ctx.p
    sub_tab = ctx.pair_tables[1]
    return sub_tab[a, b].astype(np.int64)


def space_coords(ctx, d):
    """All q^d coordinate vectors in canonical order, as an (q^d, d) array."""
    _check_cap(ctx.q, d)
    return unpack_coords(ctx.q, d, np.arange(ctx.q ** d, dtype=np.int64))


def enumerate_sphere_zero(ctx, d):
    """The zero sphere S_0 = {x : ||x|| = 0}; always contains the origin."""
    if d < 1:
        raise DimensionTooSmallError(f"dimension {d} < 1")
    tab = norm_table(ctx, d)
    packed = np.nonzero(tab == 0)[0]
    return PointSet(ctx, d, map(tuple, unpack_coords(ctx.q, d, packed)))


def enumerate_cone(ctx, n):
    """The cone {x in F_q^n : ||x||_C = 0}."""
    tab = cone_norm_table(ctx, n)
    packed = np.nonzero(tab == 0)[0]
    return PointSet(ctx, n, map(tuple, unpack_coords(ctx.q, n, packed)))


def pairwise_diff_packed(A, B=None):
    """(n, m) array of packed indices of x - y over x in A, y in B (B = A)."""
    ctx, d = A.ctx, A.d
    X = A.coords
    if B is None:
        Y = X
    else:
        if B.ctx is not ctx or B.d != d:
            raise DimensionMismatchError("point sets live in different spaces")
        Y = B.coords
    diff = _sub_elementwise(ctx, X[:, None, :], Y[None, :, :])
    return diff @ pack_weights(ctx.q, d)


def pairwise_norms(A):
    """(n, n) array of element indices ||x - y|| over ordered pairs of A."""
    tab = norm_table(A.ctx, A.d)
    return tab[pairwise_diff_packed(A)]


def distance_set(A):
    """Delta(A) = {||x - y||} over ordered pairs, as a set of element indices."""
    if len(A) == 0:
        raise EmptySetError("distance set of an empty point set")
    return set(int(t) for t in np.unique(pairwise_norms(A)))


def pinned_distance_set(x, A):
    """Delta_x(A) = {||x - a|| : a in A}."""
    if len(A) == 0:
        raise EmptySetError("pinned distance set of an empty point set")
    ctx = A.ctx
    x = tuple(x)
    if len(x) != A.d:
        raise DimensionMismatchError("pin has wrong dimension")
    sub = ctx.sub
    return {norm(ctx, tuple(sub(c, a) for c, a in zip(x, pt))) for pt in A}
