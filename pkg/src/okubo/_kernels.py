"""Integer-encoded kernels for finite-field hot loops.

Elements of a finite field with q elements are encoded by their enumeration
index 0..q-1 and all arithmetic goes through q x q int64 lookup tables, so
the same kernels serve GF(p) and GF(p^k) alike.  The hot loops (row
reduction, the idempotent census scan, batched bilinear products) each have
two interchangeable implementations:

* a numba ``@njit`` loop, compiled lazily on first use (the default), and
* a vectorized pure-numpy fallback.

Set ``OKUBO_PURE_NUMPY=1`` to force the numpy path; it is also used
automatically when numba is not importable.  Both paths produce identical
results (the RREF of a matrix is unique), which the test suite checks.
"""

from __future__ import annotations

import functools
import os

import numpy as np

PURE_NUMPY = os.environ.get("OKUBO_PURE_NUMPY", "") not in ("", "0")

if PURE_NUMPY:
    HAS_NUMBA = False
else:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAS_NUMBA = False

#: largest field size for which lookup tables are built
TABLE_MAX_Q = 256


def backend_name():
    return "numba" if HAS_NUMBA else "numpy"


def supports_field(field):
    q = field.cardinality
    return q is not None and q <= TABLE_MAX_Q


class FieldTables:
    """Lookup tables for one finite field, plus encode/decode helpers."""

    def __init__(self, field):
        q = field.cardinality
        els = list(field.elements())
        self.field = field
        self.q = q
        self.elements = els
        add = np.empty((q, q), dtype=np.int64)
        mul = np.empty((q, q), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                add[i, j] = field.element_index(a + b)
                mul[i, j] = field.element_index(a * b)
        neg = np.empty(q, dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for i, a in enumerate(els):
            neg[i] = field.element_index(-a)
            if a:
                inv[i] = field.element_index(a.inverse())
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv


@functools.lru_cache(maxsize=None)
def tables_for(field):
    return FieldTables(field)


def encode_rows(field, rows):
    return np.array(
        [[field.element_index(s) for s in row] for row in rows], dtype=np.int64
    )


def decode_rows(field, arr):
    els = tables_for(field).elements
    return [tuple(els[c] for c in row) for row in arr.tolist()]


def encode_coords(field, coords):
    return np.array([field.element_index(s) for s in coords], dtype=np.int64)


def decode_coords(field, arr):
    els = tables_for(field).elements
    return tuple(els[int(c)] for c in arr)


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------


def _rref_loop(a, add_t, mul_t, inv_t, neg_t, piv_out):
    m, n = a.shape
    r = 0
    for c in range(n):
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        if a[r, c] != 1:
            s = inv_t[a[r, c]]
            for j in range(c, n):
                a[r, j] = mul_t[s, a[r, j]]
        for i in range(m):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, n):
                    if a[r, j] != 0:
                        a[i, j] = add_t[a[i, j], neg_t[mul_t[f, a[r, j]]]]
        piv_out[r] = c
        r += 1
        if r == m:
            break
    return r


def _rref_numpy(a, add_t, mul_t, inv_t, neg_t, piv_out):
    m, n = a.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        if a[r, c] != 1:
            a[r] = mul_t[inv_t[a[r, c]], a[r]]
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            prod = mul_t[a[rows, c][:, None], a[r][None, :]]
            a[rows] = add_t[a[rows], neg_t[prod]]
        piv_out[r] = c
        r += 1
        if r == m:
            break
    return r


if HAS_NUMBA:
    _rref_fast = njit(cache=True)(_rref_loop)
else:
    _rref_fast = _rref_numpy


def rref_encoded(field, arr, impl=None):
    """RREF of an encoded matrix; returns (reduced copy, pivot columns)."""
    t = tables_for(field)
    a = np.ascontiguousarray(arr, dtype=np.int64).copy()
    if a.size == 0:
        return a, ()
    piv = np.empty(min(a.shape), dtype=np.int64)
    fn = impl if impl is not None else _rref_fast
    rank = fn(a, t.add, t.mul, t.inv, t.neg, piv)
    return a, tuple(int(c) for c in piv[:rank])


# ---------------------------------------------------------------------------
# idempotent census scan
# ---------------------------------------------------------------------------


def _census_loop(start, stop, q, dim, tidx, tc, add_t, mul_t, out):
    # code <-> coordinates: v[0] is the most significant digit, so scanning
    # codes in increasing order enumerates coordinate tuples lexicographically
    count = 0
    v = np.empty(dim, dtype=np.int64)
    w = np.empty(dim, dtype=np.int64)
    for code in range(start, stop):
        if code == 0:
            continue
        x = code
        for d in range(dim - 1, -1, -1):
            v[d] = x % q
            x //= q
        for d in range(dim):
            w[d] = 0
        for e in range(tidx.shape[0]):
            i = tidx[e, 0]
            j = tidx[e, 1]
            k = tidx[e, 2]
            w[k] = add_t[w[k], mul_t[tc[e], mul_t[v[i], v[j]]]]
        ok = True
        for d in range(dim):
            if w[d] != v[d]:
                ok = False
                break
        if ok:
            out[count] = code
            count += 1
    return count


def _census_numpy(start, stop, q, dim, tidx, tc, add_t, mul_t, out):
    codes = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    v = (codes[:, None] // powers[None, :]) % q
    w = np.zeros_like(v)
    for e in range(tidx.shape[0]):
        i, j, k = int(tidx[e, 0]), int(tidx[e, 1]), int(tidx[e, 2])
        w[:, k] = add_t[w[:, k], mul_t[tc[e], mul_t[v[:, i], v[:, j]]]]
    mask = (w == v).all(axis=1) & (codes != 0)
    found = codes[mask]
    out[: found.size] = found
    return int(found.size)


if HAS_NUMBA:
    _census_fast = njit(cache=True)(_census_loop)
else:
    _census_fast = _census_numpy


def census_codes(field, tensor_entries, dim, impl=None, chunk=1 << 20):
    """Codes of all nonzero fixed points of v -> v*v, by exhaustive scan.

    ``tensor_entries`` is a list of (i, j, k, scalar) sparse tensor entries.
    """
    t = tables_for(field)
    q = t.q
    total = q**dim
    tidx = np.array([[i, j, k] for i, j, k, _ in tensor_entries], dtype=np.int64)
    tc = np.array(
        [field.element_index(c) for _, _, _, c in tensor_entries], dtype=np.int64
    )
    fn = impl if impl is not None else _census_fast
    found = []
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        out = np.empty(stop - start, dtype=np.int64)
        n = fn(start, stop, q, dim, tidx, tc, t.add, t.mul, out)
        if n:
            found.append(out[:n].copy())
    if not found:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(found)


def decode_census(field, codes, dim):
    """Turn census codes back into tuples of Scalars, in scan order."""
    els = tables_for(field).elements
    q = len(els)
    out = []
    for code in codes.tolist():
        digits = [None] * dim
        for d in range(dim - 1, -1, -1):
            digits[d] = els[code % q]
            code //= q
        out.append(tuple(digits))
    return out


# ---------------------------------------------------------------------------
# batched bilinear products (shared numpy helper for randomized identity trials)
# ---------------------------------------------------------------------------


def batch_multiply(field, tensor_entries, X, Y):
    """Row-wise products Z[r] = X[r] * Y[r] for encoded coordinate batches."""
    t = tables_for(field)
    Z = np.zeros_like(X)
    for i, j, k, c in tensor_entries:
        cc = field.element_index(c)
        Z[:, k] = t.add[Z[:, k], t.mul[cc, t.mul[X[:, i], Y[:, j]]]]
    return Z


def batch_equal(X, Y):
    return bool((X == Y).all())


def random_coord_batch(field, rng, count, dim):
    t = tables_for(field)
    return np.array(
        [[rng.randrange(t.q) for _ in range(dim)] for _ in range(count)],
        dtype=np.int64,
    )


def implementations():
    """Both implementations of each kernel, for benchmarks and agreement tests."""
    impls = {"rref": {"numpy": _rref_numpy}, "census": {"numpy": _census_numpy}}
    if HAS_NUMBA:
        impls["rref"]["numba"] = _rref_fast
        impls["census"]["numba"] = _census_fast
    return impls
