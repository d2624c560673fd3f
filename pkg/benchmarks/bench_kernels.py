#!/usr/bin/env python3
"""Benchmark the grid-evaluation kernels: numba JIT vs pure numpy.

Times the raw (week x hour) allocation/revenue kernel on the bundled milan_s2
scenario inputs and cross-checks that both backends produce identical integer
series. The end-to-end pipeline is also timed for context.

Usage: python benchmarks/bench_kernels.py [--weeks 520] [--repeat 50]
"""

import argparse
import time

import numpy as np

from ranshare import economics, kernels, llm as llm_mod, ran as ran_mod
from ranshare.engine import run_scenario, validate_spec
from ranshare.platforms import load_catalog


def kernel_inputs(spec, catalog):
    primary = catalog.resolve(spec.platform_primary)
    fleet = ran_mod.dimension_cluster(spec.ran, primary, spec.mix, spec.w_dim)
    rho_tok = economics.resolve_depreciation(spec.pricing, spec.llm.dens_annual)
    weeks = spec.horizon_weeks
    base = ran_mod.demand_coefficient(spec.ran, primary, spec.mix)
    return dict(
        ran_profile=spec.ran.profile.values,
        llm_profile=spec.llm.profile.values,
        week_ran_coeff=np.array(
            [base * ran_mod.growth_factor(spec.ran.growth_annual, w) for w in range(weeks)]
        ),
        llm_coeff=np.array([llm_mod.demand_coefficient(spec.llm, spec.ran, w) for w in range(weeks)]),
        cap_rate=np.array(
            [spec.llm.max_concurrency * llm_mod.gpu_throughput(spec.llm, w) for w in range(weeks)]
        ),
        price=np.array([economics.token_price(spec.pricing, rho_tok, w) for w in range(weeks)]),
        g_total=fleet.g_total,
        billing_demand=spec.pricing.billing_mode == "demand",
        energy_rate=(primary.power_w * spec.ran.pue / 1000.0) * spec.ran.elec_usd_per_kwh,
    )


def time_kernel(inputs, backend: str, repeat: int):
    kernels.evaluate_grid(**inputs, backend=backend)  # warmup (JIT compile)
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernels.evaluate_grid(**inputs, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--weeks", type=int, default=520)
    parser.add_argument("--repeat", type=int, default=50)
    args = parser.parse_args()

    catalog = load_catalog()
    spec = validate_spec({"horizon_weeks": args.weeks}, preset_name="milan_s2", catalog=catalog)
    inputs = kernel_inputs(spec, catalog)
    cells = args.weeks * 168
    print(f"kernel grid: {args.weeks} weeks x 168 hours = {cells} cells, best of {args.repeat}")

    t_numpy, r_numpy = time_kernel(inputs, "numpy", args.repeat)
    print(f"numpy : {t_numpy * 1e3:8.3f} ms  ({cells / t_numpy / 1e6:7.1f} Mcells/s)")

    if not kernels.HAS_NUMBA:
        print("numba : not installed (pip install ranshare[accel])")
        return 0

    t_numba, r_numba = time_kernel(inputs, "numba", args.repeat)
    print(f"numba : {t_numba * 1e3:8.3f} ms  ({cells / t_numba / 1e6:7.1f} Mcells/s)")
    print(f"kernel speedup numba/numpy: {t_numpy / t_numba:.2f}x")

    same = (
        np.array_equal(r_numpy.ran_served, r_numba.ran_served)
        and np.array_equal(r_numpy.llm_alloc, r_numba.llm_alloc)
        and np.array_equal(r_numpy.llm_required, r_numba.llm_required)
    )
    # money may differ by summation order: bounded by a relative ulp budget
    gap = np.abs(r_numpy.revenue_micro - r_numba.revenue_micro)
    rel_gap = float((gap / np.maximum(np.abs(r_numpy.revenue_micro), 1)).max())
    print(f"integer series identical: {same}; max revenue gap: {int(gap.max())} micro-USD "
          f"(relative {rel_gap:.2e})")

    for backend in ("numpy", "numba"):
        run_scenario(spec, catalog, backend=backend)
        t0 = time.perf_counter()
        run_scenario(spec, catalog, backend=backend)
        print(f"end-to-end run_scenario [{backend}]: {(time.perf_counter() - t0) * 1e3:.1f} ms")
    return 0 if same and rel_gap <= 1e-9 else 1


if __name__ == "__main__":
    raise SystemExit(main())
