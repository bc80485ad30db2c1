"""First-principles oracles for the closed forms.

Each check returns a :class:`CheckReport`; nothing here reuses the closed
formula it is checking.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

import numpy as np

from ..algebra.partitions import Partition, partitions
from ..algebra.poly import RationalLike, RationalPoly, as_fraction
from ..algebra.special import finite_difference, hua_poly, pochhammer_partition, raising_factorial, rising
from ..catalog import (
    DomainKind,
    DomainSpec,
    PointCH,
    ball,
    c_omega,
    generic_norm_batch,
    in_base_domain_batch,
    volume,
)
from ..errors import PreconditionError, UnsupportedKindError
from ..kernel import KernelParams, epsilon, kernel_from_values, metric_det
from .quadrature import (
    gauss_jacobi_unit,
    gauss_legendre_unit,
    monte_carlo_mean,
    trapezoid_circle,
)
from .reports import CheckReport, QuadratureSpec, Scheme

HESSIAN_STEP = 1e-4
MAX_CUTOFF = 160

# ---------------------------------------------------------------------------
# Hua integral


def _ball_integral_tensor(n: int, s: Fraction, nodes: int) -> float:
    # Unit ball in C^n: angles integrate to pi^n, u_k = |z_k|^2 lives on the
    # simplex; collapsed coordinates u_1 = t_1, u_k = prod_{l<k}(1 - t_l) t_k
    # and t = 1 - v^2 smooth the boundary factor.
    v, w = gauss_legendre_unit(nodes)
    grids = np.meshgrid(*([v] * n), indexing="ij")
    weights = np.ones_like(grids[0])
    u = []
    remaining = np.ones_like(grids[0])
    for k, vk in enumerate(grids):
        t = 1 - vk * vk
        u.append(remaining * t)
        # dt = 2 v dv, collapsed Jacobian prod (1 - t_k)^{n-k-1}
        weights = weights * 2 * vk * (1 - t) ** (n - k - 1)
        remaining = remaining * (1 - t)
    for axis in range(n):
        shape = [1] * n
        shape[axis] = nodes
        weights = weights * w.reshape(shape)
    z = np.stack([np.sqrt(uk).ravel() for uk in u], axis=1).astype(complex)
    N = generic_norm_batch(ball(n), z)
    return math.pi**n * float(np.sum(weights.ravel() * np.clip(N, 0, None) ** float(s)))


def hua_integral_expected(spec: DomainSpec, s: RationalLike) -> float:
    chi = hua_poly(spec)
    s = as_fraction(s)
    return float(chi(0) / chi(s)) * volume(spec)


def hua_integral_check(
    spec: DomainSpec,
    s: RationalLike,
    q: QuadratureSpec = QuadratureSpec(),
    workers: int = 1,
) -> CheckReport:
    """Quadrature of ``N(z, z)^s`` over the base against ``chi(0)/chi(s) * vol``."""
    s = as_fraction(s)
    if s <= -1:
        raise PreconditionError("the Hua integral needs s > -1")
    if not spec.is_classical or spec.d > 4:
        raise UnsupportedKindError(f"no quadrature for {spec.label}: classical kinds with d <= 4 only")
    expected = hua_integral_expected(spec, s)
    name = f"hua[{spec.label}, s={s}, {q.scheme.value}]"
    if q.scheme is Scheme.TENSOR_GAUSS:
        if spec.kind is not DomainKind.I or spec.params[0] != 1:
            raise UnsupportedKindError("tensor quadrature covers the unit balls only")
        observed = _ball_integral_tensor(spec.d, s, q.n)
        return CheckReport.compare(name, expected, observed, 1e-8, f"{q.n} nodes per axis")

    d = spec.d
    exponent = float(s)

    def integrand(z: np.ndarray) -> np.ndarray:
        inside = in_base_domain_batch(spec, z)
        out = np.zeros(len(z))
        out[inside] = generic_norm_batch(spec, z[inside]) ** exponent
        return out

    mean, err = monte_carlo_mean(integrand, d, q.n, q.seed, workers)
    box = math.pi**d
    return CheckReport.compare(
        name, expected, box * mean, 1e-2, f"{q.n} samples, seed {q.seed}, stderr {box * err:.2e}"
    )


# ---------------------------------------------------------------------------
# monomial kernel on the disk-based domain


def _require_disk(spec: DomainSpec, mu, alpha, d0: int = 1) -> KernelParams:
    if spec.kind is not DomainKind.I or spec.params != (1, 1):
        raise UnsupportedKindError("monomial oracles are implemented over the unit disk only")
    if d0 != 1:
        raise UnsupportedKindError("monomial oracles use a one-dimensional fiber")
    params = KernelParams(spec, mu, 1, alpha)
    if not params.admissible:
        raise PreconditionError(f"alpha = {params.alpha} must exceed {params.threshold}")
    return params


def radial_rule(mu, alpha, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_0^1 g(rho) (1 - rho)^(mu alpha - 2) drho``.

    With ``q`` the denominator of ``mu`` the substitution ``rho = 1 - v^q``
    turns every fiber factor ``(1 - rho)^(mu j)`` into a polynomial in ``v``,
    leaving the Jacobi weight ``v^(q (mu alpha - 1) - 1)`` at ``v = 0``.
    """
    mu, alpha = as_fraction(mu), as_fraction(alpha)
    q = mu.denominator
    x, w = gauss_jacobi_unit(nodes, float(q * (mu * alpha - 1) - 1))
    v = 1 - x
    return 1 - v**q, q * w


def monomial_norms(mu, alpha, cutoff: int, nodes: int) -> np.ndarray:
    """Squared norms of ``z^i w^j`` (``0 <= i, j <= cutoff``) in the weighted space.

    With ``rho = |z|^2``, ``|w|^2 = (1 - rho)^mu t`` and both angles integrated
    out, the norm is ``mu * int int rho^i (1-rho)^(mu alpha - 2 + mu j)
    t^j (1-t)^(alpha - 3) dt drho``, done by a tensor Gauss-Jacobi rule in ``(rho, t)``.
    """
    rho, w_rho = radial_rule(mu, alpha, nodes)
    t, w_t = gauss_jacobi_unit(nodes, float(as_fraction(alpha)) - 3)
    idx = np.arange(cutoff + 1)
    rho_pow = w_rho[None, :] * rho[None, :] ** idx[:, None]  # (i, node)
    fiber_pow = (1 - rho[:, None]) ** (float(mu) * idx[None, :])  # (node, j)
    radial = rho_pow @ fiber_pow  # (i, j)
    moments = (w_t[None, :] * t[None, :] ** idx[:, None]).sum(axis=1)  # (j,)
    return float(mu) * radial * moments[None, :]


def _nodes_for(cutoff: int, mu, floor: int) -> int:
    q = as_fraction(mu).denominator
    return max(floor, int(math.ceil(q * cutoff * (1 + float(mu)) / 2)) + 8)


def monomial_epsilon(mu, alpha, z: complex, w: complex, norms: np.ndarray) -> float:
    """``exp(-alpha Phi) * sum |z^i w^j|^2 / ||z^i w^j||^2`` over the given norm table."""
    idx = np.arange(norms.shape[0])
    rz, sw = abs(z) ** 2, abs(w) ** 2
    kern = float(((rz**idx)[:, None] * (sw**idx)[None, :] / norms).sum())
    gap = (1 - rz) ** float(mu) - sw
    return gap ** float(alpha) * kern


def brute_force_epsilon(
    spec: DomainSpec,
    mu: RationalLike,
    alpha: RationalLike,
    points: Sequence[PointCH],
    q: QuadratureSpec = QuadratureSpec(),
    cutoff: int = 40,
    tolerance: float = 1e-6,
) -> list[CheckReport]:
    """Epsilon from numerically normalized monomials, against the closed form.

    The cutoff starts at ``cutoff`` and doubles until doubling it again moves
    every estimate by less than a tenth of the tolerance.
    """
    params = _require_disk(spec, mu, alpha)
    coords = []
    for pt in points:
        if pt.d0 != 1:
            raise UnsupportedKindError("monomial oracles use a one-dimensional fiber")
        coords.append((complex(pt.z[0]), complex(pt.w[0])))

    def estimates(c: int) -> list[float]:
        norms = monomial_norms(params.mu, params.alpha, c, _nodes_for(c, params.mu, q.n))
        return [monomial_epsilon(params.mu, params.alpha, z, w, norms) for z, w in coords]

    c = cutoff
    current = estimates(c)
    while True:
        doubled = estimates(2 * c)
        tail = max((abs(a - b) / max(1.0, abs(b)) for a, b in zip(current, doubled)), default=0.0)
        if tail < 0.1 * tolerance or 2 * c >= MAX_CUTOFF:
            break
        c *= 2
        current = doubled
    reports = []
    for pt, est in zip(points, current):
        expected = epsilon(params, pt)
        detail = f"cutoff {c}, doubling change {tail:.1e}"
        if tail >= 0.1 * tolerance:
            detail += " (tail above budget)"
        name = f"brute-epsilon[mu={params.mu}, alpha={params.alpha}, point={pt.to_json()}]"
        rep = CheckReport.compare(name, float(expected), est, tolerance, detail)
        if tail >= 0.1 * tolerance and rep.passed:
            rep = CheckReport(rep.name, rep.expected, rep.observed, rep.tolerance, False, detail)
        reports.append(rep)
    return reports


Monomials = Mapping[tuple[int, int], complex]


def _eval_monomials(f: Monomials, z, w):
    return sum(c * z**i * w**j for (i, j), c in f.items())


def reproducing_check(
    spec: DomainSpec,
    mu: RationalLike,
    alpha: RationalLike,
    f: Monomials,
    point: PointCH,
    q: QuadratureSpec = QuadratureSpec(),
    kernel: str = "truncated",
    cutoff: int = 40,
    angles: int = 64,
    tolerance: float = 1e-5,
) -> CheckReport:
    """``int f(q) K(p, conj q) dm_alpha(q)`` by 4-D quadrature, against ``f(p)``.

    ``kernel="truncated"`` uses the monomial kernel with quadrature norms;
    ``"closed"`` uses the polarized closed-form kernel.
    """
    params = _require_disk(spec, mu, alpha)
    if kernel not in ("truncated", "closed"):
        raise ValueError("kernel must be 'truncated' or 'closed'")
    pz, pw = complex(point.z[0]), complex(point.w[0])
    if point.d0 != 1 or abs(pz) >= 1 or abs(pw) ** 2 >= (1 - abs(pz) ** 2) ** float(params.mu):
        raise PreconditionError("point must be interior with a one-dimensional fiber")
    mu_f, alpha_f = float(params.mu), float(params.alpha)
    degree = max((i + j for i, j in f), default=0)
    m = max(angles, cutoff + degree + 2)
    rho, w_rho = radial_rule(params.mu, params.alpha, q.n)
    t, w_t = gauss_jacobi_unit(q.n, alpha_f - 3)
    theta, dtheta = trapezoid_circle(m)
    scale = mu_f / math.pi**2 / 4 * dtheta * dtheta

    if kernel == "truncated":
        norms = monomial_norms(params.mu, params.alpha, cutoff, _nodes_for(cutoff, mu_f, q.n))
        inv = 1 / norms
        idx = np.arange(cutoff + 1)

    total = 0j
    rot = np.exp(1j * theta)
    for r, wr in zip(rho, w_rho):
        zeta = math.sqrt(r) * rot  # (theta,)
        fiber = math.sqrt((1 - r) ** mu_f)
        eta = fiber * np.sqrt(t)[:, None] * rot[None, :]  # (t, phi)
        fvals = _eval_monomials(f, zeta[:, None, None], eta[None, :, :])  # (theta, t, phi)
        if kernel == "truncated":
            a = (pz * np.conj(zeta))[:, None] ** idx[None, :]  # (theta, i)
            b = (pw * np.conj(eta)).reshape(-1)[:, None] ** idx[None, :]  # (t*phi, j)
            kvals = (a @ inv @ b.T).reshape(m, len(t), m)
        else:
            N = 1 - pz * np.conj(zeta)[:, None, None]
            pairing = pw * np.conj(eta)[None, :, :]
            kvals = kernel_from_values(params, N, pairing)
        integrand = np.asarray(fvals) * kvals
        total += wr * np.sum(w_t[None, :, None] * integrand)
    observed = complex(scale * total)
    expected = complex(_eval_monomials(f, pz, pw))
    if observed.imag == 0 or abs(observed.imag) < 1e-14:
        observed = observed.real
    if expected.imag == 0:
        expected = expected.real
    name = f"reproducing[{kernel}, f={dict(f)}, point={point.to_json()}]"
    detail = f"{q.n} radial nodes, {m} angles" + (f", cutoff {cutoff}" if kernel == "truncated" else "")
    return CheckReport.compare(name, expected, observed, tolerance, detail)


# ---------------------------------------------------------------------------
# complex Hessians


def _real_hessian(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float) -> np.ndarray:
    # same 4-point stencil on and off the diagonal (diagonal uses offsets +-2h)
    dim = len(x)
    eye = np.eye(dim) * h
    pairs = [(i, j) for i in range(dim) for j in range(i, dim)]
    pts = []
    for i, j in pairs:
        pts += [x + eye[i] + eye[j], x + eye[i] - eye[j], x - eye[i] + eye[j], x - eye[i] - eye[j]]
    vals = func(np.array(pts)).reshape(-1, 4)
    hess = np.empty((dim, dim))
    for (i, j), v in zip(pairs, vals):
        hess[i, j] = hess[j, i] = (v[0] - v[1] - v[2] + v[3]) / (4 * h * h)
    return hess


def complex_hessian(func: Callable[[np.ndarray], np.ndarray], c: np.ndarray, step: float = HESSIAN_STEP) -> np.ndarray:
    """``d^2 f / dc_i d conj(c_j)`` of a real function of complex coordinates.

    ``func`` takes real rows ``[Re c, Im c]``.  Central differences with one
    Richardson level.
    """
    n = len(c)
    x = np.concatenate([c.real, c.imag])
    coarse = _real_hessian(func, x, step)
    fine = _real_hessian(func, x, step / 2)
    real = (4 * fine - coarse) / 3
    xx, yy = real[:n, :n], real[n:, n:]
    xy, yx = real[:n, n:], real[n:, :n]
    return 0.25 * (xx + yy + 1j * (xy - yx))


def _split(rows: np.ndarray, n: int) -> np.ndarray:
    return rows[:, :n] + 1j * rows[:, n:]


def _potential(spec: DomainSpec, mu: float, d: int) -> Callable[[np.ndarray], np.ndarray]:
    def phi(rows: np.ndarray) -> np.ndarray:
        c = _split(rows, rows.shape[1] // 2)
        N = generic_norm_batch(spec, c[:, :d])
        return -np.log(N**mu - np.sum(np.abs(c[:, d:]) ** 2, axis=1))

    return phi


def _inside(spec: DomainSpec, mu: float, c: np.ndarray) -> np.ndarray:
    d = spec.d
    ok = in_base_domain_batch(spec, c[:, :d])
    N = generic_norm_batch(spec, c[:, :d])
    gap = np.clip(N, 0, None) ** mu - np.sum(np.abs(c[:, d:]) ** 2, axis=1)
    return ok & (gap > 0)


def hessian_check(
    spec: DomainSpec,
    mu: RationalLike,
    d0: int,
    point: PointCH,
    step: float = HESSIAN_STEP,
    tolerance: float = 1e-5,
) -> CheckReport:
    """Determinant of the finite-difference complex Hessian of the potential vs the closed form."""
    if not spec.is_classical:
        raise UnsupportedKindError(f"{spec.label} has no explicit generic norm")
    mu = as_fraction(mu)
    params = KernelParams(spec, mu, d0, spec.d + d0 + 1)
    c = np.array([complex(v) for v in point.z + point.w])
    if len(point.w) != d0 or len(point.z) != spec.d:
        raise ValueError("point does not match the domain dimensions")
    n = len(c)
    probes = []
    for k in range(n):
        for shift in (10 * step, -10 * step, 10j * step, -10j * step):
            e = np.zeros(n, dtype=complex)
            e[k] = shift
            probes.append(c + e)
    if not np.all(_inside(spec, float(mu), np.array(probes))):
        raise PreconditionError(f"point is within {10 * step:g} of the boundary")
    hess = complex_hessian(_potential(spec, float(mu), spec.d), c, step)
    observed = float(np.linalg.det(hess).real)
    expected = float(metric_det(params, point))
    name = f"hessian[{spec.label}, mu={mu}, d0={d0}, point={point.to_json()}]"
    return CheckReport.compare(name, expected, observed, tolerance, f"step {step:g}, one Richardson level")


def c_omega_check(spec: DomainSpec, tolerance: float = 1e-6) -> CheckReport:
    """Determinant at the origin of the complex Hessian of ``-log N`` vs the tabulated constant."""
    if not spec.is_classical:
        raise UnsupportedKindError(f"{spec.label} has no explicit generic norm")

    def phi(rows: np.ndarray) -> np.ndarray:
        return -np.log(generic_norm_batch(spec, _split(rows, spec.d)))

    hess = complex_hessian(phi, np.zeros(spec.d, dtype=complex))
    observed = float(np.linalg.det(hess).real)
    expected = c_omega(spec)
    return CheckReport.compare(f"c_omega[{spec.label}]", float(expected), observed, tolerance)


# ---------------------------------------------------------------------------
# exact series identities


def operator_identity_check(phi: RationalPoly, n0: RationalLike, z: RationalLike, order: int) -> CheckReport:
    """``phi(t d/dt) (1 - tz)^(-n0)`` against the difference-operator closed form, exactly.

    Left: coefficient ``m`` of the binomial series multiplied by ``phi(m)``.
    Right: ``sum_k D^k phi(-n0)/k! (n0)_k (1 - tz)^(-n0-k)`` expanded to the same order.
    """
    n0, z = as_fraction(n0), as_fraction(z)
    deg = phi.degree
    if deg > 5:
        raise PreconditionError("operator check supports polynomials of degree at most 5")
    if order < max(deg, 0) + 10:
        raise PreconditionError("order must be at least deg(phi) + 10")
    if abs(z) >= 1 or n0 <= 0:
        raise PreconditionError("need |z| < 1 and n0 > 0")
    x0 = -n0
    diffs = [finite_difference(phi, k, x0) / factorial(k) for k in range(max(deg, 0) + 1)]
    lhs = [phi(m) * rising(n0, m) / factorial(m) * z**m for m in range(order + 1)]
    rhs = []
    for m in range(order + 1):
        acc = Fraction(0)
        for k, dk in enumerate(diffs):
            if dk:
                acc += dk * rising(n0, k) * rising(n0 + k, m) / factorial(m)
        rhs.append(acc * z**m)
    worst = max(abs(a - b) for a, b in zip(lhs, rhs))
    name = f"operator-identity[phi={phi.format('x')}, n0={n0}, z={z}, order={order}]"
    return CheckReport.compare(name, Fraction(0), worst, 0.0, f"{order + 1} coefficients compared exactly")


def fk_partial_sum(s: RationalLike, normsq: RationalLike, terms: int) -> Fraction:
    """Rank-one Faraut-Koranyi partial sum ``sum_{k<terms} (s)_k x^k / k!`` in exact arithmetic."""
    s, x = as_fraction(s), as_fraction(normsq)
    total = Fraction(0)
    for k in range(terms):
        lam = Partition((k,))
        total += pochhammer_partition(s, lam, 2) * x**k / factorial(k)
    return total


def fk_tail_bound(s: RationalLike, normsq: RationalLike, terms: int) -> float:
    """Geometric bound on the omitted tail, valid once the term ratio is below one."""
    s, x = float(as_fraction(s)), float(as_fraction(normsq))
    ratio = x * abs(s + terms) / (terms + 1)
    if ratio >= 1:
        return math.inf
    lead = abs(float(rising(as_fraction(s), terms))) * x**terms / math.factorial(terms)
    return lead / (1 - ratio)


def fk_rank1_check(s: RationalLike, normsq: RationalLike, terms: int = 60, tolerance: float = 1e-8) -> CheckReport:
    s, x = as_fraction(s), as_fraction(normsq)
    if not 0 <= x <= Fraction(9, 10):
        raise PreconditionError("normsq must lie in [0, 0.9]")
    partial = fk_partial_sum(s, x, terms)
    if s.denominator == 1:
        expected: Fraction | float = (1 - x) ** -s.numerator
        observed: Fraction | float = partial
    else:
        expected = float(1 - x) ** -float(s)
        observed = float(partial)
    detail = f"{terms} terms, tail bound {fk_tail_bound(s, x, terms):.1e}"
    return CheckReport.compare(f"faraut-koranyi[s={s}, |z|^2={x}]", expected, observed, tolerance, detail)


def partition_identity_check(k: int) -> CheckReport:
    """``(x)_k = sum_{|lam| = k} k!/z_lam x^len(lam)`` as exact polynomials."""
    lhs = raising_factorial(0, k)
    coeffs = [Fraction(0)] * (k + 1)
    for lam in partitions(k):
        coeffs[lam.length] += Fraction(factorial(k), lam.z)
    rhs = RationalPoly(coeffs)
    diff = lhs - rhs
    worst = max((abs(diff.coeff(i)) for i in range(k + 1)), default=Fraction(0))
    return CheckReport.compare(f"partition-identity[k={k}]", Fraction(0), worst, 0.0)
