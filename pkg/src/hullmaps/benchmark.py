"""Benchmark comparing the compiled evaluation kernel with the NumPy fallback.

Run as ``python -m hullmaps.benchmark``.  Also cross-checks that both
backends agree to floating-point accuracy on the same inputs.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ._kernels import available_backends
from .geom_core import build_configuration
from .sphere_sampling import SamplePlan, sample


def _time_backend(module, config, eps, dirs, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = module.eval_batch(config.points, config.pairwise_dirs, eps, dirs)
        best = min(best, time.perf_counter() - t0)
    return best, result


def run(n_points=32, dim=3, batch=20000, eps=1e-3, seed=0, repeats=3):
    rng = np.random.default_rng(seed)
    config = build_configuration(rng.standard_normal((n_points, dim)))
    plan = SamplePlan(dim=dim, strategy="gaussian_random", count=batch, seed=seed + 1)
    dirs = sample(plan)

    backends = available_backends()
    print(f"configuration: n={n_points} d={dim}, batch={batch}, eps={eps:g}")
    results = {}
    for name, module in backends.items():
        elapsed, out = _time_backend(module, config, eps, dirs, repeats)
        results[name] = out
        rate = batch / elapsed
        print(f"{name:>9}: {elapsed * 1e3:8.2f} ms  ({rate:,.0f} dirs/s, "
              f"{elapsed / batch * 1e9:6.1f} ns/dir)")

    if len(results) == 2:
        lam_a, _, img_a = results["compiled"]
        lam_b, _, img_b = results["numpy"]
        dl = float(np.abs(lam_a - lam_b).max())
        di = float(np.abs(img_a - img_b).max())
        print(f"backend agreement: max |dlambda| = {dl:.3e}, max |dimage| = {di:.3e}")
    else:
        print("compiled backend unavailable; benchmarked the fallback only")
    return results


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=32, help="number of points")
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--batch", type=int, default=20000)
    parser.add_argument("--eps", type=float, default=1e-3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)
    run(args.n, args.dim, args.batch, args.eps, args.seed, args.repeats)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
