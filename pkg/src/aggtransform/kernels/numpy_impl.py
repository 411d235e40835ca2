"""Reference kernels in plain numpy.

Each kernel returns ``(closure, choice)`` where ``choice[k]`` is the flat
index of the first optimal part for cell ``k`` (0 at the origin).
"""

import numpy as np


def closure_1d(h, minimize):
    n = h.shape[0]
    H = np.zeros(n)
    choice = np.zeros(n, dtype=np.int64)
    pick = np.argmin if minimize else np.argmax
    for k in range(1, n):
        cand = h[1:k + 1] + H[k - 1::-1]
        i = int(pick(cand))
        H[k] = cand[i]
        choice[k] = i + 1
    return H, choice


def closure_nd(a, minimize):
    shape = a.shape
    H = np.zeros(shape)
    choice = np.zeros(shape, dtype=np.int64)
    pick = np.argmin if minimize else np.argmax
    flip = (slice(None, None, -1),) * a.ndim
    for k in np.ndindex(*shape):
        if not any(k):
            continue
        box = tuple(slice(0, ki + 1) for ki in k)
        cand = a[box] + H[box][flip]
        # flat position 0 is the zero part, which is not a candidate
        i = int(pick(cand.ravel()[1:])) + 1
        H[k] = cand.flat[i]
        choice[k] = np.ravel_multi_index(np.unravel_index(i, cand.shape), shape)
    return H, choice
