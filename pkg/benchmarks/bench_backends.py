#!/usr/bin/env python3
"""Compare the compiled and pure-Python simulation backends.

Usage: python benchmarks/bench_backends.py [--horizon N] [--repeats R]
"""

import argparse
import time

import numpy as np

from klucb_transfer._backend import available_backends, get_backend
from klucb_transfer.core import BanditInstance, PriorArm, PriorSpec
from klucb_transfer.engine import KLUCB_TRANSFER, PolicyId, run_single
from klucb_transfer.index import LINEARIZED, DeltaSchedule


def bench(backend_name: str, horizon: int, repeats: int) -> tuple[float, float]:
    inst = BanditInstance((1.0, 0.9, 0.8, 0.7, 0.6, 0.5), 1.0)
    prior = PriorSpec(
        tuple(PriorArm(1000, m + 0.05, 0.10) for m in inst.means), 1.0
    )
    backend = get_backend(backend_name)
    times = []
    final = None
    for r in range(repeats):
        t0 = time.perf_counter()
        traj = run_single(
            inst, prior, PolicyId(KLUCB_TRANSFER),
            DeltaSchedule(LINEARIZED, 0.05), horizon,
            master_seed=1, run_index=r, backend=backend,
        )
        times.append(time.perf_counter() - t0)
        final = float(traj.cum_regret[-1])
    return min(times), final


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=int, default=10**5)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    rows = []
    for name in available_backends():
        best, final = bench(name, args.horizon, args.repeats)
        rows.append((name, best, final))
        print(
            f"{name:>8}: best of {args.repeats} = {best * 1e3:8.1f} ms "
            f"({args.horizon / best:,.0f} rounds/s), final regret {final:.2f}"
        )
    if len(rows) == 2:
        regrets = {r[2] for r in rows}
        speedup = max(r[1] for r in rows) / min(r[1] for r in rows)
        print(f"speedup: {speedup:.1f}x; identical output: {len(regrets) == 1}")


if __name__ == "__main__":
    main()
