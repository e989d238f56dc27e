"""Diagonal factorizations ``A = diag(d) B`` and their cost ``||d||_r ||B||_{p,p}``.

Every factorization of a nonnegative ``A`` costs at least ``||A||_{p,q}``;
Maurey's theorem says the infimum of the cost equals the norm. This module
evaluates the cost, searches for a near-optimal ``d`` and checks the result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exponents import ExponentPair, make_pair
from .matrices import PositiveMatrix, as_positive, vector_norm
from .opnorm import (DEFAULT_MAX_ITER, DEFAULT_TOL, NormEstimate, exact_norm,
                     operator_norm, power_iteration)

SOUNDNESS_SLACK = 1e-9
RECONSTRUCTION_RTOL = 1e-12
# relative decrease an accepted step must beat; stops rounding noise from moving d
ACCEPT_RTOL = 4 * np.finfo(float).eps


@dataclass(frozen=True)
class Factorization:
    d: np.ndarray
    B: PositiveMatrix
    objective: float
    pair: ExponentPair
    gap: float
    norm: float
    iterations: int = 0
    converged: bool = True
    history: tuple = field(default=(), repr=False)

    @property
    def certified(self) -> bool:
        """False when ``q < 1``, where no tightness tolerance is promised."""
        return self.pair.q.inv <= 1


@dataclass
class FactorizationCheck:
    gap: float
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _nonzero_rows(a: np.ndarray) -> np.ndarray:
    return np.any(a > 0, axis=1)


def _require_pair(pair: ExponentPair) -> None:
    if pair.p.inv > 1:
        raise ValueError(f"factorization needs p >= 1, got p = {pair.p}")


def divide_rows(A, d) -> PositiveMatrix:
    """``B = diag(d)^-1 A`` with zero rows of ``A`` kept as zero rows."""
    A = as_positive(A)
    d = np.asarray(d, dtype=float)
    if d.shape != (A.m,):
        raise ValueError(f"d must have length {A.m}, got shape {d.shape}")
    nz = _nonzero_rows(A.a)
    if np.any(~(d[nz] > 0)):
        j = int(np.flatnonzero(nz & ~(d > 0))[0])
        raise ValueError(f"d must be positive on nonzero rows; d[{j + 1}] = {d[j]}")
    b = np.zeros_like(A.a)
    b[nz] = A.a[nz] / d[nz, None]
    return PositiveMatrix(b)


def _inner_norm(B: PositiveMatrix, pp: ExponentPair, x0, tol, max_iter) -> NormEstimate:
    """``||B||_{p,p}`` from a warm start; closed forms when available."""
    est = exact_norm(B, pp)
    if est is not None:
        return est
    return power_iteration(B, pp, x0, tol=tol, max_iter=max_iter)


def objective(A, d, pair: ExponentPair, **norm_opts) -> float:
    """Cost ``||d||_r * ||B||_{p,p}`` of the factorization with ``B = A / d`` rowwise.

    Entries of ``d`` on zero rows of ``A`` are ignored (taken as 0).
    """
    A = as_positive(A)
    _require_pair(pair)
    B = divide_rows(A, d)
    d = np.where(_nonzero_rows(A.a), np.asarray(d, dtype=float), 0.0)
    inner = operator_norm(B, make_pair(pair.p, pair.p), **norm_opts)
    return vector_norm(d, pair.r) * inner.value


def default_seed_d(A, pair: ExponentPair) -> np.ndarray:
    """Row norms ``||row_j||_{p*}`` (``l_inf`` when ``p = 1``).

    With this seed every row of ``B`` has unit ``l_{p*}`` norm, so
    ``||B||_{p,inf} = 1``.
    """
    A = as_positive(A)
    _require_pair(pair)
    inner = pair.p_conj if pair.p.inv < 1 else math.inf
    return np.asarray(vector_norm(A.a, inner, axis=1), dtype=float)


def _witness_seed(A: PositiveMatrix, pair: ExponentPair, x) -> np.ndarray:
    # d = (Ax)^(q/r) makes the norm witness x also a witness for B
    y = A.a @ x
    nz = _nonzero_rows(A.a)
    if pair.r.is_infinite:
        return nz.astype(float)
    d = np.zeros(A.m)
    d[nz] = (np.maximum(y[nz], 1e-300) / y[nz].max()) ** float(pair.q.inv / pair.r.inv)
    return d


class _Evaluator:
    """Cost of a positive ``d`` on the nonzero rows, warm-starting the inner norm."""

    def __init__(self, A, pair, tol, max_iter):
        self.a = A.a[_nonzero_rows(A.a)]
        self.pair = pair
        self.pp = make_pair(pair.p, pair.p)
        self.tol = tol
        self.max_iter = max_iter
        self.x = None
        self.calls = 0

    def __call__(self, d: np.ndarray) -> float:
        self.calls += 1
        B = PositiveMatrix(self.a / d[:, None])
        est = _inner_norm(B, self.pp, self.x, self.tol, self.max_iter)
        if est.method == "power-iteration":
            self.x = est.witness
        return vector_norm(d, self.pair.r) * est.value


def _descend(evaluate: _Evaluator, d0, target, tol, step_tol, max_iter):
    """Compass search in ``log d`` with per-coordinate step backtracking.

    Steps multiply one entry of ``d`` by ``exp(+-step)``. Returns
    ``(d, cost, history, sweeps, converged)``; ``history`` holds the accepted
    costs and is nonincreasing by construction.
    """
    d = np.array(d0, dtype=float)
    cost = evaluate(d)
    history = [cost]
    steps = np.full(d.size, 0.5)
    sweeps = 0
    while sweeps < max_iter:
        if cost <= target * (1.0 + tol) or steps.max() < step_tol:
            return d, cost, history, sweeps, True
        sweeps += 1
        for j in range(d.size):
            for sign in (1.0, -1.0):
                trial = d.copy()
                trial[j] *= math.exp(sign * steps[j])
                c = evaluate(trial)
                if c < cost * (1.0 - ACCEPT_RTOL):
                    d, cost = trial, c
                    history.append(cost)
                    steps[j] = min(2.0 * steps[j], 4.0)
                    break
            else:
                steps[j] *= 0.5
        # keep the gauge near max(d) = 1; powers of two rescale exactly
        d = d * 2.0 ** -math.floor(math.log2(d.max()))
    return d, cost, history, sweeps, False


def _power_of_two_balance(d: np.ndarray, B: PositiveMatrix, pair, inner: float):
    """Rescale to ``||d||_r ~ ||B||_{p,p}`` (within a factor sqrt 2) by an exact power of 2."""
    nd = vector_norm(d, pair.r)
    if nd == 0 or inner == 0:
        return d, B
    c = 2.0 ** round(0.5 * math.log2(inner / nd))
    return d * c, PositiveMatrix(B.a / c)


def optimize(A, pair: ExponentPair, tol: float = 1e-9, max_iter: int = 500,
             restarts: int = 2, seed: int = 0, step_tol: float = 1e-8,
             norm_opts: Optional[dict] = None) -> Factorization:
    """Search for ``d`` minimizing ``||d||_r ||B||_{p,p}``, ``B = diag(d)^-1 A``.

    Starts, in order: :func:`default_seed_d`; ``d = (A x)^(q/r)`` built from
    the norm witness ``x``; ``restarts`` log-normal perturbations of the first
    seed. Each start runs a compass search in ``log d`` that stops once the
    gap to ``||A||_{p,q}`` is below ``tol``. The best cost wins, earliest
    start on ties. The output gauge is balanced with a power-of-two scale.
    """
    A = as_positive(A)
    _require_pair(pair)
    if A.is_zero():
        raise ValueError("cannot factorize the zero matrix")
    norm_opts = dict(norm_opts or {})
    est = operator_norm(A, pair, **norm_opts)
    norm = est.value
    inner_tol = norm_opts.get("tol", DEFAULT_TOL)
    inner_iter = norm_opts.get("max_iter", DEFAULT_MAX_ITER)

    nz = _nonzero_rows(A.a)
    seed_d = default_seed_d(A, pair)[nz]
    starts = [seed_d, _witness_seed(A, pair, est.witness)[nz]]
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        starts.append(seed_d * np.exp(rng.normal(scale=0.5, size=seed_d.size)))

    evaluate = _Evaluator(A, pair, inner_tol, inner_iter)
    best = None
    total_sweeps = 0
    for d0 in starts:
        run = _descend(evaluate, d0, norm, tol, step_tol, max_iter)
        total_sweeps += run[3]
        if best is None or run[1] < best[1] * (1.0 - ACCEPT_RTOL):
            best = run
        if best[1] <= norm * (1.0 + tol):
            break

    d_nz, _, history, _, conv = best
    pp = make_pair(pair.p, pair.p)
    d = np.zeros(A.m)
    d[nz] = d_nz
    B = divide_rows(A, d)
    if evaluate.x is not None:
        norm_opts.setdefault("x0", evaluate.x)
    d, B = _power_of_two_balance(d, B, pair, operator_norm(B, pp, **norm_opts).value)
    cost = vector_norm(d, pair.r) * operator_norm(B, pp, **norm_opts).value
    return Factorization(d, B, cost, pair, (cost - norm) / norm, norm,
                         total_sweeps, conv, tuple(history))


def verify_factorization(A, f: Factorization, norm_est: NormEstimate) -> FactorizationCheck:
    """Check reconstruction, nonnegativity and the cost-dominates-norm direction.

    Each failed check is appended to ``violations``; nothing raises.
    """
    A = as_positive(A)
    a = A.a
    b = np.asarray(f.B.a)
    d = np.asarray(f.d, dtype=float)
    ref = norm_est.value if norm_est.value > 0 else 1.0
    check = FactorizationCheck(gap=(f.objective - norm_est.value) / ref)
    if b.shape != a.shape or d.shape != (A.m,):
        check.violations.append(f"shape mismatch: A {a.shape}, B {b.shape}, d {d.shape}")
        return check
    recon = d[:, None] * b
    bad = np.abs(recon - a) > RECONSTRUCTION_RTOL * np.maximum(np.abs(a), np.finfo(float).tiny)
    bad &= ~((a == 0) & (recon == 0))
    if np.any(bad):
        j, k = np.argwhere(bad)[0]
        check.violations.append(
            f"reconstruction: d[{j + 1}] * B[{j + 1},{k + 1}] = {recon[j, k]!r} != {a[j, k]!r}")
    if np.any(d < 0) or not np.all(np.isfinite(d)):
        check.violations.append("d has negative or non-finite entries")
    if np.any(b < 0):
        check.violations.append("B has negative entries")
    zero_rows = ~_nonzero_rows(a)
    if np.any((d == 0) != zero_rows):
        check.violations.append("d must vanish exactly on the zero rows of A")
    if f.objective < norm_est.lower - SOUNDNESS_SLACK:
        check.violations.append(
            f"objective {f.objective!r} below norm lower bound {norm_est.lower!r}")
    return check
