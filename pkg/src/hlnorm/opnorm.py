"""Operator norms ``||A||_{p,q} = sup { ||Ax||_q : ||x||_p <= 1 }`` of nonnegative matrices.

For a nonnegative matrix the supremum is attained on the nonnegative orthant,
so every routine here searches over nonnegative unit vectors only.

Routes
------
* :func:`exact_norm` -- closed forms (``p = 1``, ``q = inf``, ``p = inf``,
  diagonal, rank one).
* :func:`power_iteration` -- the nonnegative Boyd fixed-point map for
  ``1 < p < inf``; the objective is nondecreasing along the iterates.
* :func:`grid_oracle` -- brute force over a simplex grid of the unit
  ``p``-sphere for ``n <= 4``, with a certified upper bound.
* :func:`norm_via_duality` -- ``||A||_{p,q} = ||A^T||_{q*,p*}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy import optimize

from .exponents import Exponent, ExponentPair, conjugate, make_pair
from .matrices import PositiveMatrix, as_positive, transpose, vector_norm

METHODS = (
    "exact-p1",
    "exact-pinf",
    "exact-qinf",
    "exact-diagonal",
    "exact-rank-one",
    "power-iteration",
    "grid-oracle",
    "duality",
    "convex-program",
)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
DEFAULT_MULTISTARTS = 8

MONOTONE_SLACK = 1e-12
# keeps 0**(q-1) finite when q < 1
CLAMP = 1e-300
RANK_ONE_RTOL = 1e-12


class MonotonicityError(RuntimeError):
    """The power-iteration objective decreased; indicates a bug, not bad input."""


@dataclass(frozen=True)
class NormEstimate:
    value: float
    witness: np.ndarray
    method: str
    iterations: int = 0
    lower: float = 0.0
    upper: float = math.inf
    tol: float = 0.0
    converged: bool = True
    history: tuple = field(default=(), repr=False)

    @property
    def is_exact(self) -> bool:
        return self.method.startswith("exact")


def objective(A, x, q) -> float:
    """``||Ax||_q`` for a nonnegative vector ``x``."""
    return vector_norm(np.asarray(as_positive(A).a) @ np.asarray(x, dtype=float), q)


def _unit(x, p) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x / vector_norm(x, p)


def _exact(value, witness, method) -> NormEstimate:
    value = float(value)
    return NormEstimate(value, np.asarray(witness, dtype=float), method,
                        iterations=0, lower=value, upper=value)


def _check_pair(pair: ExponentPair) -> None:
    if pair.p.inv > 1:
        raise ValueError(f"domain exponent must satisfy p >= 1, got p = {pair.p}")


def _rank_one_factors(a: np.ndarray):
    """Return ``(u, v)`` with ``a == outer(u, v)`` up to rounding, else ``None``."""
    j0, k0 = np.unravel_index(np.argmax(a), a.shape)
    pivot = a[j0, k0]
    u = a[:, k0].copy()
    v = a[j0, :] / pivot
    if np.max(np.abs(a - np.outer(u, v))) <= RANK_ONE_RTOL * pivot:
        return u, v
    return None


def norm_l1_to(A, q) -> float:
    """``||A||_{1,q}`` = largest column ``l_q`` norm, for any ``q >= 1``.

    Not tied to ``q <= p``: the unit ball of ``l_1`` is the hull of the
    basis vectors, so the sup of the convex ``||Ax||_q`` sits on one of them.
    """
    q = Exponent.of(q)
    if q.inv > 1:
        raise ValueError(f"need q >= 1, got {q}")
    return float(np.max(vector_norm(as_positive(A).a, q, axis=0)))


def norm_to_linf(A, p) -> float:
    """``||A||_{p,inf}`` = largest row ``l_{p*}`` norm, for any ``p >= 1`` (Hoelder)."""
    return float(np.max(vector_norm(as_positive(A).a, conjugate(p), axis=1)))


def exact_norm(A, pair: ExponentPair) -> Optional[NormEstimate]:
    """Closed-form norm when one applies, else ``None``.

    Ties in the ``p = 1`` and ``q = inf`` maxima go to the smallest index.
    """
    A = as_positive(A)
    _check_pair(pair)
    a = A.a
    m, n = A.shape
    p, q, r = pair.p, pair.q, pair.r

    if A.is_zero():
        return _exact(0.0, np.eye(n)[0], "exact-diagonal")

    if p.inv == 1 and q.inv <= 1:
        cols = vector_norm(a, q, axis=0)
        k = int(np.argmax(cols))
        return _exact(cols[k], np.eye(n)[k], "exact-p1")

    if q.is_infinite:
        # forces p = inf, so p* = 1 and the all-ones vector attains it
        rows = vector_norm(a, pair.p_conj, axis=1)
        return _exact(np.max(rows), np.ones(n), "exact-qinf")

    if p.is_infinite:
        ones = np.ones(n)
        return _exact(vector_norm(a @ ones, q), ones, "exact-pinf")

    k = min(m, n)
    off = a.copy()
    off[np.arange(k), np.arange(k)] = 0.0
    if not np.any(off):
        d = np.zeros(n)
        d[:k] = np.diagonal(a)
        if r.is_infinite:
            x = np.eye(n)[int(np.argmax(d))]
        else:
            # Hoelder equality: x_k^p proportional to d_k^r
            x = _unit((d / d.max()) ** (r.value / p.value), p)
        return _exact(vector_norm(d, r), x, "exact-diagonal")

    factors = _rank_one_factors(a)
    if factors is not None:
        u, v = factors
        if p.inv == 1:
            x = np.eye(n)[int(np.argmax(v))]
        else:
            x = _unit((v / v.max()) ** (1.0 / (p.value - 1.0)), p)
        return _exact(vector_norm(u, q) * vector_norm(v, pair.p_conj), x, "exact-rank-one")

    return None


def power_iteration(A, pair: ExponentPair, x0=None, tol: float = DEFAULT_TOL,
                    max_iter: int = DEFAULT_MAX_ITER) -> NormEstimate:
    """Boyd's nonnegative fixed-point iteration for ``1 < p < inf``.

    One step is ``y = A x``, ``g = A^T y^(q-1)``, ``x <- g^(1/(p-1))``
    rescaled to unit ``p``-norm. Stops when the relative change of
    ``||Ax||_q`` drops below ``tol``; otherwise returns after ``max_iter``
    steps with ``converged=False``.

    Raises
    ------
    MonotonicityError
        If the objective drops by more than a ``1e-12`` relative slack.
    """
    A = as_positive(A)
    p, q = pair.p, pair.q
    if not (1 < p.value < math.inf):
        raise ValueError(f"power iteration needs 1 < p < inf, got p = {p}")
    if q.is_infinite:
        raise ValueError("power iteration needs q < inf")
    if tol <= 0:
        raise ValueError("tol must be positive")
    m, n = A.shape
    if A.is_zero():
        return NormEstimate(0.0, np.eye(n)[0], "power-iteration", 0, 0.0, math.inf, tol)

    # zero rows never contribute to ||Ax||_q
    a = A.a[np.any(A.a > 0, axis=1)]
    pv, qv = p.value, q.value
    x = np.full(n, 1.0) if x0 is None else np.asarray(x0, dtype=float)
    if x.shape != (n,) or np.any(x < 0) or not np.any(x > 0):
        raise ValueError("x0 must be a nonnegative, nonzero vector of length n")
    x = _unit(x, p)
    f = vector_norm(a @ x, q)
    history = [f]
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        y = np.maximum(a @ x, CLAMP)
        y = y / y.max()
        g = a.T @ y ** (qv - 1.0)
        g = g / g.max()
        x_new = _unit(g ** (1.0 / (pv - 1.0)), p)
        f_new = vector_norm(a @ x_new, q)
        if f_new < f * (1.0 - MONOTONE_SLACK):
            raise MonotonicityError(
                f"objective decreased from {f!r} to {f_new!r} at step {it} for {pair}")
        history.append(f_new)
        done = abs(f_new - f) <= tol * f_new
        x, f = x_new, f_new
        if done:
            converged = True
            break
    return NormEstimate(f, x, "power-iteration", it, f, math.inf, tol, converged, tuple(history))


def _convex_program(A: PositiveMatrix, pair: ExponentPair, starts) -> NormEstimate:
    """``p = 1, q < 1``: maximize the concave ``sum (Ax)^q`` over the simplex."""
    a = A.a[np.any(A.a > 0, axis=1)]
    qv = pair.q.value
    n = A.n

    def neg(x):
        return -np.sum(np.maximum(a @ x, CLAMP) ** qv)

    def neg_grad(x):
        y = np.maximum(a @ x, CLAMP)
        return -qv * (a.T @ y ** (qv - 1.0))

    best = None
    for x0 in starts:
        res = optimize.minimize(
            neg, x0 / x0.sum(), jac=neg_grad, method="SLSQP",
            bounds=[(0.0, 1.0)] * n,
            constraints=[{"type": "eq", "fun": lambda x: x.sum() - 1.0,
                          "jac": lambda x: np.ones_like(x)}],
            options={"ftol": 1e-15, "maxiter": 1000},
        )
        x = np.clip(res.x, 0.0, None)
        x = x / x.sum()
        f = vector_norm(a @ x, pair.q)
        if best is None or f > best.value:
            best = NormEstimate(f, x, "convex-program", int(res.nit), f, math.inf,
                                0.0, bool(res.success))
    # a vertex can beat an interior stationary point found with poor accuracy
    cols = vector_norm(a, pair.q, axis=0)
    k = int(np.argmax(cols))
    if cols[k] > best.value:
        best = replace(best, value=float(cols[k]), lower=float(cols[k]), witness=np.eye(n)[k])
    return best


def _starts(n: int, multistarts: int, seed: int, x0=None) -> list:
    starts = []
    for i in range(max(1, multistarts)):
        if i == 0 and x0 is not None:
            starts.append(np.asarray(x0, dtype=float))
        else:
            starts.append(np.random.default_rng(seed + i).random(n) + 0.05)
    return starts


def operator_norm(A, pair: ExponentPair, tol: float = DEFAULT_TOL,
                  max_iter: int = DEFAULT_MAX_ITER, multistarts: int = DEFAULT_MULTISTARTS,
                  seed: int = 0, x0=None) -> NormEstimate:
    """``||A||_{p,q}`` for ``1 <= p``, ``0 < q <= p``.

    Uses a closed form when one applies. Otherwise runs power iteration from
    ``multistarts`` random positive starts (start ``i`` seeded with
    ``seed + i``; ``x0``, if given, replaces start 0) and keeps the largest
    value, earliest start on ties.
    """
    A = as_positive(A)
    _check_pair(pair)
    est = exact_norm(A, pair)
    if est is not None:
        return est
    starts = _starts(A.n, multistarts, seed, x0)
    if pair.p.inv == 1:
        return replace(_convex_program(A, pair, starts), tol=tol)
    best = None
    for x in starts:
        run = power_iteration(A, pair, x, tol=tol, max_iter=max_iter)
        if best is None or run.value > best.value:
            best = run
    return best


def _primal_witness(A: PositiveMatrix, pair: ExponentPair, z) -> np.ndarray:
    """Map a dual witness ``z`` (for ``A^T``) to a primal one via Hoelder equality."""
    g = A.a.T @ np.asarray(z, dtype=float)
    n = A.n
    if not np.any(g > 0):
        return np.eye(n)[0]
    p = pair.p
    if p.inv == 1:
        return np.eye(n)[int(np.argmax(g))]
    if p.is_infinite:
        return np.ones(n)
    return _unit((g / g.max()) ** (1.0 / (p.value - 1.0)), p)


def norm_via_duality(A, pair: ExponentPair, **opts) -> NormEstimate:
    """``||A||_{p,q}`` computed as ``||A^T||_{q*,p*}``; needs ``p, q >= 1``.

    The returned witness is a primal vector rebuilt from the dual witness, and
    ``lower`` is its certified value ``||A x||_q``.
    """
    A = as_positive(A)
    if pair.q_conj is None or pair.p_conj is None:
        raise ValueError(f"duality needs p, q >= 1, got {pair}")
    dual = operator_norm(transpose(A), make_pair(pair.q_conj, pair.p_conj), **opts)
    x = _primal_witness(A, pair, dual.witness)
    lower = objective(A, x, pair.q)
    value = max(dual.value, lower)
    return NormEstimate(value, x, "duality", dual.iterations, lower, dual.upper,
                        dual.tol, dual.converged, dual.history)


def _compositions3(total: int) -> np.ndarray:
    c0 = np.repeat(np.arange(total + 1), total + 1 - np.arange(total + 1))
    starts = np.concatenate(([0], np.cumsum(total + 1 - np.arange(total + 1))[:-1]))
    c1 = np.arange(c0.size) - np.repeat(starts, total + 1 - np.arange(total + 1))
    return np.column_stack((c0, c1, total - c0 - c1))


def _composition_chunks(total: int, parts: int):
    """Yield arrays whose rows enumerate all compositions of ``total`` into ``parts``."""
    if parts == 1:
        yield np.array([[total]])
    elif parts == 2:
        c = np.arange(total + 1)
        yield np.column_stack((c, total - c))
    elif parts == 3:
        yield _compositions3(total)
    else:
        for c0 in range(total + 1):
            for rest in _composition_chunks(total - c0, parts - 1):
                yield np.column_stack((np.full(len(rest), c0), rest))


def grid_upper_bound(value: float, pair: ExponentPair, n: int, resolution: int) -> float:
    """Certified upper bound on the norm from a grid maximum ``value``.

    Rounding the simplex coordinates ``t = x^p`` of the maximizer to the grid
    moves them by at most ``h = 2 floor(n/2) / resolution`` in ``l_1``, hence
    moves ``x`` by at most ``delta = h^(1/p)`` in ``l_p`` (``p >= 1``). With
    ``K = max(1, 2^(1/q - 1))`` the (quasi)triangle inequality gives
    ``||A|| <= K (value + ||A|| delta)``, so ``||A|| <= K value / (1 - K delta)``.
    """
    if pair.p.is_infinite:
        return value
    h = 2 * (n // 2) / resolution
    delta = h ** pair.p.inv
    k = max(1.0, 2.0 ** float(pair.q.inv - 1))
    if k * delta >= 1:
        return math.inf
    return k * value / (1.0 - k * delta)


def grid_oracle(A, pair: ExponentPair, resolution: int) -> NormEstimate:
    """Brute-force maximum of ``||Ax||_q`` over a grid on the unit ``p``-sphere.

    Grid points are ``x = (c / resolution)^(1/p)`` for every composition ``c``
    of ``resolution`` into ``n`` nonnegative parts. For ``p = inf`` the cube
    vertices are enumerated instead, which is exact because ``||Ax||_q`` is
    monotone on the nonnegative orthant.
    """
    A = as_positive(A)
    _check_pair(pair)
    n = A.n
    if n > 4:
        raise ValueError(f"grid oracle supports n <= 4 columns, got {n}")
    if resolution < 8:
        raise ValueError(f"resolution must be >= 8, got {resolution}")
    if A.is_zero():
        return NormEstimate(0.0, np.eye(n)[0], "grid-oracle", 0, 0.0, 0.0)
    a = A.a
    p, q = pair.p, pair.q

    if p.is_infinite:
        chunks = [((np.arange(2 ** n)[:, None] >> np.arange(n)) & 1).astype(float)]
    else:
        chunks = ((c / resolution) ** float(p.inv) for c in _composition_chunks(resolution, n))

    best_val, best_x, count = -1.0, None, 0
    for X in chunks:
        vals = vector_norm(X @ a.T, q, axis=1)
        i = int(np.argmax(vals))
        count += len(X)
        if vals[i] > best_val:
            best_val, best_x = float(vals[i]), X[i].copy()
    upper = grid_upper_bound(best_val, pair, n, resolution)
    return NormEstimate(best_val, best_x, "grid-oracle", count, best_val, upper)
