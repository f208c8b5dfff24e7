"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--steps 500] [--n 1024] [--repeat 5]
"""

import argparse
import time

import numpy as np

from holomem import kernels
from holomem.recall import make_time_bases
from holomem.hrr import spectral_phases
from holomem.timecode import sample_bank, time_vectors


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=500)
    parser.add_argument("--n", type=int, default=1024)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the fallback only")

    bank = sample_bank(5e-6, seed=0)
    ts = np.arange(1, args.steps + 1, dtype=float)
    T = time_vectors(bank, range(1, args.steps + 1))
    phases = np.stack([spectral_phases(b) for b in make_time_bases(0, args.n)])

    cases = {
        f"oscillator_table ({args.steps} steps)": lambda b: kernels.oscillator_table(
            bank.thetas, bank.phis, bank.selection, bank.use_cos, ts, backend=b),
        f"fractional_spectrum ({args.steps} steps, n={args.n})": lambda b: kernels.fractional_spectrum(
            T, phases, backend=b),
    }
    print(f"{'kernel':<45}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in cases.items():
        results = {b: fn(b) for b in backends}
        if len(backends) == 2:
            assert np.allclose(results["python"], results["compiled"], atol=1e-9)
        secs = {b: best_of(lambda: fn(b), args.repeat) for b in backends}
        row = f"{name:<45}" + "".join(f"{secs[b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) == 2:
            row += f"{secs['python'] / secs['compiled']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
