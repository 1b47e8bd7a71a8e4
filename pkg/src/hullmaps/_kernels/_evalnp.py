"""Pure-NumPy fallback for the batch evaluation kernel.

Every array operation here is row-independent, so per-direction results do
not depend on how a batch is chunked or split.
"""

import numpy as np

_CHUNK_BUDGET = 4_000_000  # floats held per (chunk, n, n) block


def eval_batch(points, pair_dirs, eps, dirs):
    points = np.ascontiguousarray(points, dtype=float)
    pair_dirs = np.ascontiguousarray(pair_dirs, dtype=float)
    dirs = np.ascontiguousarray(dirs, dtype=float)
    n, d = points.shape
    nb = dirs.shape[0]

    lambdas = np.empty((nb, n))
    log_c = np.empty((nb, n))
    images = np.empty((nb, d))

    chunk = max(1, min(8192, _CHUNK_BUDGET // (n * n)))
    idx = np.arange(n)
    for start in range(0, nb, chunk):
        sl = slice(start, min(start + chunk, nb))
        block = dirs[sl]
        # dots[k, i, j] = <block[k], pair_dirs[i, j]>, accumulated per coordinate
        # so the summation order is fixed and independent of the batch size.
        dots = np.zeros((block.shape[0], n, n))
        for c in range(d):
            dots += block[:, c, None, None] * pair_dirs[None, :, :, c]
        cfac = eps + np.maximum(0.0, -dots)
        cfac[:, idx, idx] = 1.0  # log(1) = 0 stands in for the skipped j = i term
        lc = np.sum(np.log(cfac), axis=2)
        m = lc.max(axis=1)
        w = np.exp(lc - m[:, None])
        delta = w.sum(axis=1)
        lam = w / delta[:, None]
        img = np.zeros((block.shape[0], d))
        for i in range(n):
            img += lam[:, i, None] * points[i]
        lambdas[sl] = lam
        log_c[sl] = lc
        images[sl] = img

    return lambdas, log_c, images
