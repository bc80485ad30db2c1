"""Quadrature rules and counter-based Monte Carlo."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

MC_BLOCK = 1 << 16


def gauss_legendre_unit(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on ``[0, 1]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


def gauss_jacobi_unit(n: int, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``int_0^1 f(x) (1 - x)^beta dx``."""
    if beta <= -1:
        raise ValueError("endpoint exponent must exceed -1")
    x, w = roots_jacobi(n, float(beta), 0.0)
    return (x + 1) / 2, w / 2 ** (beta + 1)


def trapezoid_circle(m: int) -> tuple[np.ndarray, float]:
    """``m`` equispaced angles and the common weight; exact for trig polynomials of degree < m."""
    return 2 * math.pi * np.arange(m) / m, 2 * math.pi / m


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Generator for one Monte Carlo block; a pure function of ``(seed, block)``."""
    return np.random.Generator(np.random.Philox(key=np.array([seed, block], dtype=np.uint64)))


def uniform_disks(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    """``size`` uniform samples from the product of ``dim`` unit disks."""
    radius = np.sqrt(rng.random((size, dim)))
    angle = 2 * math.pi * rng.random((size, dim))
    return radius * np.exp(1j * angle)


def monte_carlo_mean(
    integrand: Callable[[np.ndarray], np.ndarray],
    dim: int,
    samples: int,
    seed: int,
    workers: int = 1,
) -> tuple[float, float]:
    """Mean of ``integrand`` over the product of unit disks, with its standard error.

    Samples are drawn in fixed-size blocks whose streams depend only on the
    seed and block index, and the block sums are reduced in index order, so
    the result is bit-identical for any worker count.
    """
    sizes = [MC_BLOCK] * (samples // MC_BLOCK)
    if samples % MC_BLOCK:
        sizes.append(samples % MC_BLOCK)

    def run(item):
        index, size = item
        values = integrand(uniform_disks(block_generator(seed, index), size, dim))
        return math.fsum(values), math.fsum(values * values)

    items = list(enumerate(sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sums = list(pool.map(run, items))
    else:
        sums = [run(item) for item in items]
    total = math.fsum(s for s, _ in sums)
    total_sq = math.fsum(s for _, s in sums)
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / samples)
