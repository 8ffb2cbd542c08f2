"""Compare the compiled kernels against the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py [--n N] [--repeat R]``.  Both
backends are imported directly, so the ``IDEALTETRA_PURE`` switch is not
needed here.
"""

import argparse
import math
import timeit

import numpy as np

from idealtetra import _fallback

try:
    from idealtetra import _kernels
except ImportError:
    _kernels = None


def _inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    theta = rng.uniform(-10.0, 10.0, n)
    w = rng.dirichlet((1.0, 1.0, 1.0), n)
    w = w[np.all(w < 0.5, axis=1)]
    r, s, t = w.T.copy()
    k = np.sqrt((r + s + t) * (-r + s + t) * (r - s + t) * (r + s - t))
    return theta, (r, s, t, k)


def _cases(mod, theta, rstk):
    r, s, t, k = rstk
    m = min(len(theta), 2000)
    return {
        "lobachevsky scalar loop": lambda: [mod.lobachevsky(float(x)) for x in theta[:m]],
        "lobachevsky array": lambda: mod.lobachevsky_array(theta),
        "volume scalar loop": lambda: [
            mod.ideal_volume(float(a), float(b), float(c), float(d))
            for a, b, c, d in zip(r[:m], s[:m], t[:m], k[:m])
        ],
        "volume array": lambda: mod.ideal_volume_array(r, s, t, k),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    theta, rstk = _inputs(args.n)
    backends = {"python": _fallback}
    if _kernels is not None:
        backends["cython"] = _kernels
    else:
        print("compiled kernels not built; timing the fallback only")
    results = {}
    for name, mod in backends.items():
        for case, fn in _cases(mod, theta, rstk).items():
            results[case, name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    # agreement check so the speedup is not bought with accuracy
    if _kernels is not None:
        d_lob = np.max(np.abs(_kernels.lobachevsky_array(theta) - _fallback.lobachevsky_array(theta)))
        d_vol = np.max(
            np.abs(_kernels.ideal_volume_array(*rstk) - _fallback.ideal_volume_array(*rstk))
        )
        print(f"max |cython - python|: lobachevsky {d_lob:.2e}, volume {d_vol:.2e}")
    print(f"{'case':28s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for case in _cases(_fallback, theta, rstk):
        py = results[case, "python"] * 1e3
        cy = results.get((case, "cython"), math.nan) * 1e3
        print(f"{case:28s} {py:12.3f} {cy:12.3f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
