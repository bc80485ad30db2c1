"""Named verification suites with deterministic report order."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable

import numpy as np

from ..algebra.poly import RationalPoly
from ..catalog import PointCH, random_interior_point, type_i, type_ii, type_iii, type_iv
from .checks import (
    brute_force_epsilon,
    c_omega_check,
    fk_rank1_check,
    hessian_check,
    hua_integral_check,
    operator_identity_check,
    partition_identity_check,
    reproducing_check,
)
from .reports import CheckReport, QuadratureSpec

Task = Callable[[], list[CheckReport]]

DISK = type_i(1, 1)
MC_SAMPLES = 1 << 20


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CARTAN_HARTOGS_THREADS", "1")))
    except ValueError:
        return 1


def epsilon_points() -> list[PointCH]:
    """Five interior points over the disk, fiber ratio 1 or 1/2 at the first two."""
    return [
        PointCH((0,), (0,)),
        PointCH((0,), (math.sqrt(0.5),)),
        PointCH(("3/10",), (0,)),
        PointCH(((0.2, 0.3),), ((0, 0.4),)),
        PointCH(("-1/2",), ("3/10",)),
    ]


def _one(fn, *args, **kwargs) -> Task:
    return lambda: [fn(*args, **kwargs)]


def _hua_tasks(seed: int) -> list[Task]:
    tasks = [_one(hua_integral_check, DISK, s) for s in (0, 1, Fraction(3, 2))]
    tasks += [_one(hua_integral_check, type_i(1, 2), s) for s in (0, 1)]
    mc = QuadratureSpec.monte_carlo(MC_SAMPLES, seed)
    tasks += [_one(hua_integral_check, spec, 1, mc) for spec in (type_i(2, 2), type_iii(2))]
    return tasks


def _epsilon_tasks(seed: int) -> list[Task]:
    pts = epsilon_points()
    return [lambda mu=mu, alpha=alpha: brute_force_epsilon(DISK, mu, alpha, pts) for mu, alpha in ((1, 5), (2, 6))]


def _hessian_tasks(seed: int) -> list[Task]:
    rng = np.random.default_rng(seed)
    tasks = [
        _one(hessian_check, DISK, 1, 1, PointCH((0,), (0,))),
        _one(hessian_check, DISK, 1, 1, PointCH((0,), (math.sqrt(0.5),))),
    ]
    for spec, mu in ((DISK, 1), (DISK, 2), (type_i(2, 2), 1), (type_iv(5), Fraction(5, 6))):
        for _ in range(5):
            tasks.append(_one(hessian_check, spec, mu, 1, random_interior_point(spec, mu, 1, rng)))
    return tasks


def _c_omega_tasks(seed: int) -> list[Task]:
    specs = (DISK, type_i(2, 2), type_i(2, 3), type_ii(4), type_ii(5), type_iii(2), type_iii(3), type_iv(5), type_iv(6))
    return [_one(c_omega_check, spec) for spec in specs]


def _operator_tasks(seed: int) -> list[Task]:
    x = RationalPoly.x()
    phis = (RationalPoly.constant(1), x, x * x, x**3 - 2 * x + 1)
    return [_one(operator_identity_check, phi, n0, Fraction(1, 3), 30) for phi in phis for n0 in (1, 2)]


def _series_tasks(seed: int) -> list[Task]:
    cases = ((2, "1/4"), (0, "1/2"), (1, "1/2"), ("5/2", "1/2"), (3, "3/10"))
    tasks = [_one(fk_rank1_check, Fraction(s), Fraction(x)) for s, x in cases]
    tasks += [_one(partition_identity_check, k) for k in range(13)]
    return tasks


def _reproducing_tasks(seed: int) -> list[Task]:
    cases = (
        ({(0, 0): 1}, PointCH((0,), (0,))),
        ({(1, 0): 1}, PointCH(("3/10",), (0,))),
        ({(1, 1): 1}, PointCH(("1/5",), ("3/10",))),
    )
    return [_one(reproducing_check, DISK, 1, 5, f, pt, kernel=k) for f, pt in cases for k in ("truncated", "closed")]


SUITES: dict[str, Callable[[int], list[Task]]] = {
    "hua": _hua_tasks,
    "epsilon": _epsilon_tasks,
    "hessian": _hessian_tasks,
    "c-omega": _c_omega_tasks,
    "operator": _operator_tasks,
    "series": _series_tasks,
    "reproducing": _reproducing_tasks,
}


def suite_names() -> list[str]:
    return ["all", *SUITES]


def run_suite(name: str = "all", seed: int = 0, workers: int | None = None) -> list[CheckReport]:
    """Run a named suite; report order is fixed whatever the worker count."""
    if name == "all":
        builders = list(SUITES.values())
    elif name in SUITES:
        builders = [SUITES[name]]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    tasks = [task for build in builders for task in build(seed)]
    workers = thread_count() if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda task: task(), tasks))
    else:
        chunks = [task() for task in tasks]
    return [report for chunk in chunks for report in chunk]
