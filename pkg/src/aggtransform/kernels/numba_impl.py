"""JIT kernels. Same contract as :mod:`numpy_impl`, bit-identical results."""

import numpy as np
from numba import njit, prange


@njit(cache=True, inline="always")
def _better(v, best, minimize):
    return v < best if minimize else v > best


@njit(cache=True)
def closure_1d(h, minimize):
    n = h.shape[0]
    top = n - 1
    H = np.zeros(n)
    # mirror[top - i] == H[i], so H[k - j] is read forward as mirror[top - k + j]
    mirror = np.zeros(n)
    choice = np.zeros(n, dtype=np.int64)
    start = np.inf if minimize else -np.inf
    for k in range(1, n):
        off = top - k
        b0 = b1 = b2 = b3 = start
        i0 = i1 = i2 = i3 = k + 1
        stop = 1 + (k - k % 4)
        # four independent lanes break the compare dependency chain
        for j in range(1, stop, 4):
            v0 = h[j] + mirror[off + j]
            v1 = h[j + 1] + mirror[off + j + 1]
            v2 = h[j + 2] + mirror[off + j + 2]
            v3 = h[j + 3] + mirror[off + j + 3]
            if _better(v0, b0, minimize):
                b0 = v0
                i0 = j
            if _better(v1, b1, minimize):
                b1 = v1
                i1 = j + 1
            if _better(v2, b2, minimize):
                b2 = v2
                i2 = j + 2
            if _better(v3, b3, minimize):
                b3 = v3
                i3 = j + 3
        for j in range(stop, k + 1):
            v0 = h[j] + mirror[off + j]
            if _better(v0, b0, minimize):
                b0 = v0
                i0 = j
        best = b0
        bj = i0
        for v, i in ((b1, i1), (b2, i2), (b3, i3)):
            if _better(v, best, minimize) or (v == best and i < bj):
                best = v
                bj = i
        if bj > k:
            bj = 1  # every candidate was +inf
        H[k] = best
        mirror[top - k] = best
        choice[k] = bj
    return H, choice


@njit(parallel=True, cache=True)
def _closure_levels(a, shape, order, level_start, minimize):
    # cells of one level (index sum) only depend on strictly lower levels
    ndim = shape.size
    strides = np.empty(ndim, dtype=np.int64)
    s = 1
    for d in range(ndim - 1, -1, -1):
        strides[d] = s
        s *= shape[d]
    H = np.zeros(a.size)
    choice = np.zeros(a.size, dtype=np.int64)
    last = ndim - 1
    for lev in range(1, level_start.size - 1):
        for t in prange(level_start[lev], level_start[lev + 1]):
            kf = order[t]
            k = np.empty(ndim, dtype=np.int64)
            rem = kf
            for d in range(ndim):
                k[d] = rem // strides[d]
                rem = rem % strides[d]
            j = np.zeros(ndim, dtype=np.int64)
            best = np.inf if minimize else -np.inf
            bj = -1
            kl = k[last]
            while True:
                jb = 0
                mb = 0
                for d in range(last):
                    jb += j[d] * strides[d]
                    mb += (k[d] - j[d]) * strides[d]
                for jl in range(kl + 1):
                    jf = jb + jl
                    if jf == 0:
                        continue
                    v = a[jf] + H[mb + kl - jl]
                    # the first candidate always counts, as with argmin over all-inf
                    if bj < 0 or _better(v, best, minimize):
                        best = v
                        bj = jf
                d = last - 1
                while d >= 0:
                    j[d] += 1
                    if j[d] <= k[d]:
                        break
                    j[d] = 0
                    d -= 1
                if d < 0:
                    break
            H[kf] = best
            choice[kf] = bj
    return H, choice


def closure_nd(a, minimize):
    shape = np.array(a.shape, dtype=np.int64)
    level = np.indices(a.shape).sum(axis=0).ravel()
    order = np.argsort(level, kind="stable").astype(np.int64)
    level_start = np.concatenate(([0], np.cumsum(np.bincount(level)))).astype(np.int64)
    H, choice = _closure_levels(np.ascontiguousarray(a, dtype=np.float64).ravel(),
                                shape, order, level_start, minimize)
    return H.reshape(a.shape), choice.reshape(a.shape)
