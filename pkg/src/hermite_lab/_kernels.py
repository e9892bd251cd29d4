"""Row reduction over GF(p) on int64 arrays.

Two implementations of the same kernel: a numba ``@njit`` loop nest and a
vectorized numpy path.  ``HERMITE_LAB_DISABLE_JIT=1`` (or a missing numba)
selects numpy.  Both require ``p < 2**31`` so that products fit in int64.
"""
import os

import numpy as np

MAX_MODULUS = 2**31

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

JIT_ENABLED = numba is not None and os.environ.get("HERMITE_LAB_DISABLE_JIT", "0") not in ("1", "true", "yes")


def _rref_mod_p_numpy(a, p):
    a = np.ascontiguousarray(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots[r] = c
        r += 1
    return a, pivots[:r].copy()


if numba is not None:

    @numba.njit(cache=True)
    def _inv_mod(x, p):
        t, new_t = 0, 1
        r, new_r = p, x
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @numba.njit(cache=True)
    def _rref_mod_p_numba_inplace(a, p):
        rows, cols = a.shape
        for i in range(rows):
            for j in range(cols):
                v = a[i, j] % p
                a[i, j] = v + p if v < 0 else v
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _inv_mod(a[r, c], p)
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(rows):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                for j in range(c, cols):
                    if a[r, j] != 0:
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[r] = c
            r += 1
        return pivots[:r].copy()

    def _rref_mod_p_numba(a, p):
        a = np.array(a, dtype=np.int64, copy=True, order="C")
        pivots = _rref_mod_p_numba_inplace(a, np.int64(p))
        return a, pivots

else:  # pragma: no cover
    _rref_mod_p_numba = None


def rref_mod_p(a, p, use_jit=None):
    """Reduced row echelon form of ``a`` over GF(p); returns ``(R, pivot_columns)``."""
    if not 2 <= p < MAX_MODULUS:
        raise ValueError(f"modulus {p} unsupported by the int64 kernel")
    if use_jit is None:
        use_jit = JIT_ENABLED
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros(a.shape, dtype=np.int64), np.zeros(0, dtype=np.int64)
    if use_jit and _rref_mod_p_numba is not None:
        return _rref_mod_p_numba(a, p)
    return _rref_mod_p_numpy(a, p)
