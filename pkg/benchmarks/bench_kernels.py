"""Compiled vs. numpy kernels on the workloads the pipeline actually runs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--csv out.csv]
"""
import argparse
import csv
import sys
import timeit

import numpy as np

from modrdm import analysis, gridenv, kernels


def workloads(rng):
    """``name -> (function name, args)``; sizes follow the desk and paper presets."""
    out = {}
    for preset, (k, T) in (("desk", (200, 60)), ("paper", (500, 100))):
        spec = gridenv.default_specs(preset)[2]
        mask = np.ascontiguousarray(spec.free_mask())
        actions = rng.integers(0, gridenv.N_ACTIONS, (k, T)).astype(np.int64)
        sx, sy = spec.fixed_start
        gx, gy = spec.reward_cell
        out[f"simulate_batch {preset} {k}x{T}"] = (
            "simulate_batch", (mask, sx, sy, gx, gy, actions, spec.max_steps, 0,
                               gridenv.STEP_PENALTY, gridenv.GOAL_REWARD))
    for n in (8, 20, 60):
        x = np.round(rng.normal(size=2 * n), 1)
        ranks, _ = analysis._doubled_ranks(x)
        out[f"rank_sum_counts {n}+{n}"] = ("rank_sum_counts", (np.ascontiguousarray(ranks), n))
    for preset in ("desk", "paper"):
        reps = analysis.RepresentativeSet.build(gridenv.default_specs(preset))
        queries = rng.random((64 * 50, reps.images.shape[1])).astype(np.float32)
        out[f"nearest_l1 {preset} 3200x{len(reps.images)}"] = ("nearest_l1", (queries, reps.images))
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--csv", default=None)
    args = p.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the python backend is timed", file=sys.stderr)
    rows = []
    for name, (fn, fargs) in workloads(np.random.default_rng(0)).items():
        row = {"workload": name}
        results = {}
        for bname, mod in backends.items():
            f = getattr(mod, fn)
            results[bname] = f(*fargs)
            t = timeit.Timer(lambda: f(*fargs))
            number = max(1, t.autorange()[0] // 5)
            row[bname] = min(t.repeat(args.repeat, number)) / number
        if len(results) == 2:  # the two backends must agree before their speed means anything
            a, b = results["python"], results["cython"]
            a, b = (a if isinstance(a, tuple) else (a,)), (b if isinstance(b, tuple) else (b,))
            row["agree"] = all(np.array_equal(np.asarray(u), np.asarray(v)) for u, v in zip(a, b))
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)

    width = max(len(r["workload"]) for r in rows)
    print(f"{'workload':<{width}}  {'python ms':>10}  {'cython ms':>10}  {'speedup':>8}  agree")
    for r in rows:
        cy = f"{1e3 * r['cython']:>10.3f}" if "cython" in r else f"{'-':>10}"
        sp = f"{r['speedup']:>7.1f}x" if "speedup" in r else f"{'-':>8}"
        print(f"{r['workload']:<{width}}  {1e3 * r['python']:>10.3f}  {cy}  {sp}  {r.get('agree', '-')}")
    if args.csv:
        with open(args.csv, "w", newline="") as f:
            w = csv.DictWriter(f, fieldnames=["workload", "python", "cython", "speedup", "agree"])
            w.writeheader()
            w.writerows(rows)
    return 0 if all(r.get("agree", True) for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
