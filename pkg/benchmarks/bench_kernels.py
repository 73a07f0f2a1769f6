#!/usr/bin/env python3
"""Compare the jitted and pure-numpy lanes of the hot kernels.

The package picks the numba lane when it imports (set ORDERLAB_PURE_NUMPY=1
to force the numpy lane everywhere); this script times both on the two
sweeps that dominate the verification suites and checks they agree.

Run:  python benchmarks/bench_kernels.py
"""

import time

from orderlab import _kernels
from orderlab.seqspace import eta
from orderlab.tiepoint import clopen_to_mask, parse_point, tie_decompose


def timed(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def bench_salient():
    n = 12
    e = eta(n)
    s = sum(j * eta(j) for j in range(n))
    rows = []
    if _kernels.HAS_NUMBA:
        _kernels.salient_violations(e, s, 10)  # compile outside the timing
        out, dt = timed(_kernels.salient_violations, e, s, e)
        rows.append(("numba", out, dt))
    out, dt = timed(_kernels.salient_violations_numpy, e, s, e, repeat=1)
    rows.append(("numpy", out, dt))
    return f"inequality sweep, {e + 1:,} coefficients", rows


def bench_probe_sweep():
    td = tie_decompose(parse_point("0110^omega"), 4)
    below = clopen_to_mask(td.below, 4)
    above = clopen_to_mask(td.above, 4)
    x_bit = int(td.point.expand(4), 2)
    args = (1 << 16, x_bit, below, above)
    rows = []
    if _kernels.HAS_NUMBA:
        _kernels.probe_sweep(64, x_bit, below, above)
        out, dt = timed(_kernels.probe_sweep, *args)
        rows.append(("numba", out, dt))
    out, dt = timed(_kernels.probe_sweep_numpy, *args)
    rows.append(("numpy", out, dt))
    return "probe-mask sweep, 65,536 probes", rows


def main():
    print(f"active lane: {_kernels.ACTIVE_LANE}")
    for title, rows in (bench_salient(), bench_probe_sweep()):
        print(f"\n{title}")
        outs = {str(out) for _, out, _ in rows}
        for lane, out, dt in rows:
            print(f"  {lane:6s} {dt * 1000:10.1f} ms   result={out}")
        if len(outs) > 1:
            raise SystemExit("lanes disagree!")
        print("  lanes agree")


if __name__ == "__main__":
    main()
