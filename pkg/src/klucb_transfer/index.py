"""Exploration schedules, the prior penalty, and the transfer index.

The index U(t) is the largest q with

    alpha * (q - mu_hat)_+^2 + beta * (q - shifted_prior)_+^2 <= delta,

where alpha = N(t) / (2 sigma^2) weighs the online data and
beta = N' / (2 sigma'^2) weighs the offline prior data, with
shifted_prior = mu_hat_prior + l_bound.  Both a closed-form solver (three
quadratic branches) and a bisection oracle are provided; they must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

THEORY = "theory"
LINEARIZED = "linearized"


@dataclass(frozen=True)
class DeltaSchedule:
    """Exploration budget per round: ln t + 3 ln(max(1, ln t)) or (1+eps) ln t."""

    kind: str
    epsilon: float = 0.0

    def __post_init__(self):
        if self.kind not in (THEORY, LINEARIZED):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.kind == LINEARIZED and not (
            math.isfinite(self.epsilon) and self.epsilon > 0
        ):
            raise ValueError("linearized schedule needs epsilon > 0")


def delta_at(schedule: DeltaSchedule, t: int) -> float:
    if t < 1:
        raise ValueError(f"round index must be >= 1, got {t}")
    lt = math.log(t)
    if schedule.kind == THEORY:
        return lt + 3.0 * math.log(max(1.0, lt))
    return (1.0 + schedule.epsilon) * lt


@dataclass(frozen=True)
class IndexInputs:
    alpha: float
    mu_hat: float
    beta: float
    shifted_prior: float
    delta: float

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")


class UnboundedIndexError(ValueError):
    """Raised when alpha = beta = 0: the constraint set is all of R."""


def prior_penalty(q: float, beta: float, shifted_prior: float) -> float:
    """Cost of an index value q exceeding the prior's upper envelope."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    excess = q - shifted_prior
    if beta == 0.0 or excess <= 0.0:
        return 0.0
    return beta * excess * excess


def _constraint(inp: IndexInputs, q: float) -> float:
    g = 0.0
    d_on = q - inp.mu_hat
    if inp.alpha > 0.0 and d_on > 0.0:
        g += inp.alpha * d_on * d_on
    d_off = q - inp.shifted_prior
    if inp.beta > 0.0 and d_off > 0.0:
        g += inp.beta * d_off * d_off
    return g


def index_closed_form(inp: IndexInputs) -> float:
    """Largest feasible q, via the three-branch quadratic case analysis."""
    alpha, beta, delta = inp.alpha, inp.beta, inp.delta
    mu, s = inp.mu_hat, inp.shifted_prior
    if alpha == 0.0 and beta == 0.0:
        raise UnboundedIndexError("index is unbounded when alpha = beta = 0")
    if beta == 0.0:
        return mu + math.sqrt(delta / alpha)
    if alpha == 0.0:
        return s + math.sqrt(delta / beta)
    root_b = math.sqrt(delta / beta)
    if mu >= s + root_b:
        return s + root_b
    root_a = math.sqrt(delta / alpha)
    if s >= mu + root_a:
        return mu + root_a
    gap = mu - s
    disc = (alpha + beta) * delta - alpha * beta * gap * gap
    # Both boundary cases are excluded, so the discriminant is positive up to
    # rounding; clamp tiny negatives from cancellation.
    if disc < 0.0:
        disc = 0.0
    return (alpha * mu + beta * s + math.sqrt(disc)) / (alpha + beta)


def index_bisection_oracle(inp: IndexInputs, tol: float | None = None) -> float:
    """Solve the defining constraint by monotone bisection.

    Independent of the closed form: brackets the root from the lowest defined
    anchor, expands geometrically, then bisects until |g(q) - delta| <= tol.
    """
    alpha, beta, delta = inp.alpha, inp.beta, inp.delta
    if alpha == 0.0 and beta == 0.0:
        raise UnboundedIndexError("index is unbounded when alpha = beta = 0")
    if tol is None:
        tol = 1e-12 * max(1.0, abs(delta))
    if tol <= 0:
        raise ValueError("tol must be positive")

    anchors = []
    if alpha > 0.0:
        anchors.append(inp.mu_hat)
    if beta > 0.0:
        anchors.append(inp.shifted_prior)
    lo = min(anchors)
    if delta == 0.0:
        return lo

    step = math.sqrt(delta / (alpha + beta))
    hi = lo + step
    for _ in range(200):
        if _constraint(inp, hi) > delta:
            break
        lo = hi
        step *= 2.0
        hi = lo + step
    else:
        raise RuntimeError("failed to bracket the index root")

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g = _constraint(inp, mid)
        if abs(g - delta) <= tol:
            return mid
        if g > delta:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-16 * max(1.0, abs(hi)):
            return 0.5 * (lo + hi)
    raise RuntimeError("bisection did not converge within 200 iterations")
