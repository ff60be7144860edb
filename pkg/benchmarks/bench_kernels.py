"""Time the numba and numpy versions of each kernel on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from oscomp import kernels


def cases():
    mask = kernels.membership_mask_numpy(np.array([7, 9, 11]), 200)
    rng = np.random.default_rng(0)
    a = rng.random(2000) < 0.3
    b = rng.random(2000) < 0.3
    ys = np.arange(20, 60, dtype=np.int64)
    return {
        "membership_mask": ((np.array([11, 13, 17]), 2_000), {}),
        # numpy's shift doubling overtakes the loop on very long tables
        "membership_mask_large": ((np.array([101, 103, 107]), 200_000), {}),
        "sumset": ((a, b, 4000), {}),
        "min_k_row": ((13, ys, 400, mask, 200), {}),
        "grid_mask": ((np.array([[1, 3], [2, 1], [3, 2]]), (120, 120)), {}),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if kernels.BACKEND != "numba":
        print("numba unavailable; only the numpy timings are shown")
    print(f"{'kernel':<22}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, (call_args, kwargs) in cases().items():
        kernel = name.removesuffix("_large")
        fast = getattr(kernels, f"{kernel}_numpy")
        compiled = getattr(kernels, f"{kernel}_numba")
        t_np = min(timeit.repeat(lambda: fast(*call_args, **kwargs), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{name:<22}{t_np * 1e3:>12.2f}{'-':>12}{'-':>10}")
            continue
        compiled(*call_args, **kwargs)  # compile outside the timed region
        t_nb = min(timeit.repeat(lambda: compiled(*call_args, **kwargs), number=1, repeat=args.repeat))
        print(f"{name:<22}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
