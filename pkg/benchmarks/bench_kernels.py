"""Compare the compiled and numpy susceptibility kernels.

Usage: python benchmarks/bench_kernels.py [--points N ...] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from tripod_xpm import _kernels_py
from tripod_xpm.model import to_angular

try:
    from tripod_xpm import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def make_inputs(n: int):
    dp = to_angular(np.linspace(-70.0, 70.0, n))
    dt = np.zeros(n)
    dc = np.zeros(n)
    gammas = tuple(float(to_angular(g)) for g in (3.5, 0.5, 1.5, 1.0))
    rabi = tuple(float(to_angular(r)) for r in (1.15, 2.83, 70.0))
    return (dp, dt, dc, gammas, *rabi, 0.38, 0.12, 0.0, 1e3)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, nargs="+", default=[101, 2001, 100_000])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)

    backends = {"numpy": _kernels_py.closed_form_subsystem}
    if _ckernels is not None:
        backends["cython"] = _ckernels.closed_form_subsystem
    else:
        print("compiled extension not available; timing numpy only")

    print(f"{'points':>8} " + " ".join(f"{b:>14}" for b in backends) + "   speedup  max_rel_diff")
    for n in args.points:
        inputs = make_inputs(n)
        times = {}
        outs = {}
        for name, fn in backends.items():
            outs[name] = fn(*inputs)
            times[name] = min(timeit.repeat(lambda: fn(*inputs), number=1, repeat=args.repeat))
        line = f"{n:>8} " + " ".join(f"{times[b] * 1e3:>11.3f} ms" for b in backends)
        if "cython" in backends:
            diff = max(
                float(np.max(np.abs(outs["cython"][k] - outs["numpy"][k]) / np.abs(outs["numpy"][k])))
                for k in (0, 1)
            )
            line += f"   {times['numpy'] / times['cython']:6.1f}x  {diff:.2e}"
        print(line)


if __name__ == "__main__":
    main()
