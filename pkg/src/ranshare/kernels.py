"""Grid evaluation kernels: the full (week x hour-of-week) allocation sweep.

Two interchangeable backends produce the per-cell integer series and per-week
money series:

* ``numba`` -- JIT-compiled loops (default when numba is importable);
* ``numpy`` -- vectorized fallback.

The ``RANSHARE_NUMBA`` environment variable forces a backend: ``0``/``off``
selects numpy, ``1``/``require`` demands numba. Per-week growth factors are
computed once in plain Python and handed to both backends, so the integer
grids (server counts) are bit-identical regardless of backend; only the
floating-point money sums can differ in the last ulp.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

ENV_FLAG = "RANSHARE_NUMBA"
MICRO_PER_USD = 1_000_000.0

try:
    import numba

    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False

_OFF = ("0", "false", "off", "no")
_ON = ("1", "true", "on", "require")


def active_backend(backend: str | None = None) -> str:
    """Resolve the backend to use: explicit argument, env flag, then auto."""
    if backend is None:
        backend = os.environ.get(ENV_FLAG, "auto").lower()
        if backend in _OFF:
            backend = "numpy"
        elif backend in _ON:
            backend = "numba"
        else:
            backend = "auto"
    if backend == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if backend == "numba" and not HAS_NUMBA:
        raise RuntimeError(f"numba backend requested ({ENV_FLAG}) but numba is not installed")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


@dataclass(frozen=True)
class GridResult:
    """Raw kernel outputs over the full grid (counts) and per week (micro-USD)."""

    ran_served: np.ndarray        # (W, 168) int64, capped at the fleet size
    unmet_ran: np.ndarray         # (W, 168) int64, demand beyond the fleet
    llm_required: np.ndarray      # (W, 168) int64
    llm_alloc: np.ndarray         # (W, 168) int64
    revenue_micro: np.ndarray     # (W,) int64
    ran_opex_micro: np.ndarray    # (W,) int64
    llm_energy_micro: np.ndarray  # (W,) int64


def _evaluate_numpy(
    ran_profile: np.ndarray,
    llm_profile: np.ndarray,
    week_ran_coeff: np.ndarray,
    llm_coeff: np.ndarray,
    cap_rate: np.ndarray,
    price: np.ndarray,
    g_total: int,
    billing_demand: bool,
    energy_rate: float,
) -> GridResult:
    ran_req = np.ceil(week_ran_coeff[:, None] * ran_profile[None, :]).astype(np.int64)
    ran_served = np.minimum(ran_req, g_total)
    unmet = ran_req - ran_served
    free = g_total - ran_served

    conc = llm_coeff[:, None] * llm_profile[None, :]
    required = np.ceil(conc).astype(np.int64)
    alloc = np.minimum(required, free)

    billed = alloc * cap_rate[:, None]
    if billing_demand:
        billed = np.minimum(billed, conc * cap_rate[:, None])
    tokens = billed.sum(axis=1) * 3600.0
    revenue_micro = np.floor(price * tokens * MICRO_PER_USD + 0.5).astype(np.int64)

    ran_hours = ran_served.sum(axis=1)
    llm_hours = alloc.sum(axis=1)
    ran_opex_micro = np.floor(ran_hours * energy_rate * MICRO_PER_USD + 0.5).astype(np.int64)
    llm_energy_micro = np.floor(llm_hours * energy_rate * MICRO_PER_USD + 0.5).astype(np.int64)
    return GridResult(ran_served, unmet, required, alloc, revenue_micro, ran_opex_micro, llm_energy_micro)


def _kernel_body(
    ran_profile,
    llm_profile,
    week_ran_coeff,
    llm_coeff,
    cap_rate,
    price,
    g_total,
    billing_demand,
    energy_rate,
    ran_served,
    unmet,
    required,
    alloc,
    revenue_micro,
    ran_opex_micro,
    llm_energy_micro,
):
    weeks = week_ran_coeff.shape[0]
    hours = ran_profile.shape[0]
    for w in range(weeks):
        billed_sum = 0.0
        ran_hours = 0
        llm_hours = 0
        for h in range(hours):
            r = int(math.ceil(week_ran_coeff[w] * ran_profile[h]))
            served = r if r < g_total else g_total
            free = g_total - served
            conc = llm_coeff[w] * llm_profile[h]
            q = int(math.ceil(conc))
            a = q if q < free else free
            ran_served[w, h] = served
            unmet[w, h] = r - served
            required[w, h] = q
            alloc[w, h] = a
            b = a * cap_rate[w]
            if billing_demand:
                d = conc * cap_rate[w]
                if d < b:
                    b = d
            billed_sum += b
            ran_hours += served
            llm_hours += a
        tokens = billed_sum * 3600.0
        revenue_micro[w] = int(math.floor(price[w] * tokens * MICRO_PER_USD + 0.5))
        ran_opex_micro[w] = int(math.floor(ran_hours * energy_rate * MICRO_PER_USD + 0.5))
        llm_energy_micro[w] = int(math.floor(llm_hours * energy_rate * MICRO_PER_USD + 0.5))


_numba_kernel = None


def _get_numba_kernel():
    global _numba_kernel
    if _numba_kernel is None:
        _numba_kernel = numba.njit(cache=True)(_kernel_body)
    return _numba_kernel


def _evaluate_numba(
    ran_profile,
    llm_profile,
    week_ran_coeff,
    llm_coeff,
    cap_rate,
    price,
    g_total,
    billing_demand,
    energy_rate,
) -> GridResult:
    weeks = week_ran_coeff.shape[0]
    hours = ran_profile.shape[0]
    ran_served = np.empty((weeks, hours), dtype=np.int64)
    unmet = np.empty((weeks, hours), dtype=np.int64)
    required = np.empty((weeks, hours), dtype=np.int64)
    alloc = np.empty((weeks, hours), dtype=np.int64)
    revenue_micro = np.empty(weeks, dtype=np.int64)
    ran_opex_micro = np.empty(weeks, dtype=np.int64)
    llm_energy_micro = np.empty(weeks, dtype=np.int64)
    _get_numba_kernel()(
        ran_profile,
        llm_profile,
        week_ran_coeff,
        llm_coeff,
        cap_rate,
        price,
        np.int64(g_total),
        billing_demand,
        energy_rate,
        ran_served,
        unmet,
        required,
        alloc,
        revenue_micro,
        ran_opex_micro,
        llm_energy_micro,
    )
    return GridResult(ran_served, unmet, required, alloc, revenue_micro, ran_opex_micro, llm_energy_micro)


def evaluate_grid(
    ran_profile: np.ndarray,
    llm_profile: np.ndarray,
    week_ran_coeff: np.ndarray,
    llm_coeff: np.ndarray,
    cap_rate: np.ndarray,
    price: np.ndarray,
    g_total: int,
    billing_demand: bool,
    energy_rate: float,
    backend: str | None = None,
) -> GridResult:
    """Evaluate the full allocation/revenue grid.

    Args:
        ran_profile: 168 peak-normalized radio profile values.
        llm_profile: 168 daily-fraction inference profile values.
        week_ran_coeff: per-week radio demand coefficient (servers at profile 1).
        llm_coeff: per-week inference demand coefficient (GPUs at profile 1).
        cap_rate: per-week tokens/s capacity of one allocated GPU.
        price: per-week price per token in USD.
        g_total: fleet size.
        billing_demand: bill min(capacity, demanded tokens) instead of capacity.
        energy_rate: USD per GPU-hour of electricity (TDP x PUE x tariff).
        backend: "numba", "numpy", or None to use the env flag / auto.
    """
    impl = _evaluate_numba if active_backend(backend) == "numba" else _evaluate_numpy
    return impl(
        np.ascontiguousarray(ran_profile, dtype=np.float64),
        np.ascontiguousarray(llm_profile, dtype=np.float64),
        np.ascontiguousarray(week_ran_coeff, dtype=np.float64),
        np.ascontiguousarray(llm_coeff, dtype=np.float64),
        np.ascontiguousarray(cap_rate, dtype=np.float64),
        np.ascontiguousarray(price, dtype=np.float64),
        int(g_total),
        bool(billing_demand),
        float(energy_rate),
    )
