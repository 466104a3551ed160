"""Nonlinear least-squares fitting of rank-frequency models.

Each fit starts from the transform regression in :func:`models.linearize`
and refines it with a Levenberg-Marquardt iteration (Gauss-Newton steps
with an adaptive, diagonally scaled damping term).  All ranks carry equal
weight.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import models
from .errors import (DomainError, InsufficientData, LetterFitError,
                     SingularJacobian, TooFewRanks)
from .models import ModelSpec, ParamVector, PiecewiseSpec

log = logging.getLogger(__name__)

_LAMBDA0 = 1e-3
_LAMBDA_MAX = 1e16


@dataclass(frozen=True)
class FitOptions:
    max_iterations: int = 200
    rel_sse_tolerance: float = 1e-12
    param_step_tolerance: float = 1e-10
    jacobian: str = "analytic"
    fd_step: float = 1e-7
    scale_mode: str = "free"

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if min(self.rel_sse_tolerance, self.param_step_tolerance, self.fd_step) <= 0:
            raise ValueError("tolerances must be positive")
        if self.jacobian not in ("analytic", "finite_difference"):
            raise ValueError(f"unknown jacobian mode {self.jacobian!r}")
        if self.scale_mode not in ("free", "constrained"):
            raise ValueError(f"unknown scale mode {self.scale_mode!r}")


@dataclass(frozen=True, eq=False)
class FitResult:
    """Outcome of fitting one model to one distribution.

    ``residuals`` are ``observed - fitted`` in rank order.  A failed fit has
    ``error`` set and ``sse`` equal to NaN.
    """

    model: str
    params: Optional[Union[ParamVector, PiecewiseSpec]]
    sse: float
    residuals: np.ndarray
    iterations: int
    converged: bool
    initial_params: Optional[Union[ParamVector, PiecewiseSpec]]
    initial_sse: float
    p: int
    n: int
    scale_mode: str = "free"
    message: str = ""
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def fitted(self) -> np.ndarray:
        return self.observed - self.residuals

    @property
    def observed(self) -> np.ndarray:
        return self._observed

    def to_dict(self) -> dict:
        def dump(params):
            if params is None:
                return None
            if isinstance(params, PiecewiseSpec):
                out = {f"C{k + 1}": c for k, c in enumerate(params.constants)}
                out["breakpoints"] = list(params.breakpoints)
                return out
            return params.as_dict()

        return {
            "model": self.model,
            "eq": models.MODELS[self.model].eq if self.model in models.MODELS else None,
            "p": self.p,
            "n": self.n,
            "scale_mode": self.scale_mode,
            "params": dump(self.params),
            "sse": self.sse,
            "converged": self.converged,
            "iterations": self.iterations,
            "message": self.message,
            "error": self.error,
            "initial_params": dump(self.initial_params),
            "initial_sse": self.initial_sse,
            "observed": [float(v) for v in self.observed],
            "residuals": [float(v) for v in self.residuals],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FitResult":
        def load(params):
            if params is None:
                return None
            if "breakpoints" in params:
                k = len(params["breakpoints"]) + 1
                return PiecewiseSpec(params["breakpoints"], [params[f"C{i + 1}"] for i in range(k)])
            return ParamVector.from_dict(params)

        res = cls(
            d["model"], load(d["params"]), float(d["sse"]), np.asarray(d["residuals"], float),
            int(d["iterations"]), bool(d["converged"]), load(d.get("initial_params")),
            float(d.get("initial_sse", float("nan"))), int(d["p"]), int(d["n"]),
            d.get("scale_mode", "free"), d.get("message", ""), d.get("error"),
        )
        object.__setattr__(res, "_observed", np.asarray(d["observed"], float))
        return res


def _make_result(observed, **kw):
    res = FitResult(**kw)
    obs = np.array(observed, dtype=float)
    obs.setflags(write=False)
    object.__setattr__(res, "_observed", obs)
    return res


def _observations(dist):
    f = np.asarray(getattr(dist, "frequencies", dist), dtype=float)
    if f.ndim != 1:
        raise ValueError("expected a one-dimensional frequency vector")
    return f


class _Problem:
    """Residual model in the optimizer's coordinates.

    Free mode optimizes ``[C, shape...]``; constrained mode optimizes the
    shape alone and derives ``C`` from the normalization.  Yule's ``b`` is
    carried as ``log b`` so it stays positive.
    """

    def __init__(self, model: ModelSpec, n: int, nobs: int, opts: FitOptions):
        self.model = model
        self.n = n
        self.r = np.arange(1, nobs + 1, dtype=float)
        self.r_all = np.arange(1, n + 1, dtype=float)
        self.free = opts.scale_mode == "free"
        self.opts = opts
        self.log_b = model.id == "yule"

    # coordinate maps
    def to_theta(self, params: ParamVector) -> np.ndarray:
        shape = list(params.shape(self.model))
        if self.log_b:
            if not shape[1] > 0:
                raise DomainError("yule needs b > 0")
            shape[1] = np.log(shape[1])
        return np.array(([params.C] if self.free else []) + shape, dtype=float)

    def shape_of(self, theta):
        shape = list(theta[1:] if self.free else theta)
        if self.log_b:
            shape[1] = np.exp(shape[1])
        return tuple(float(s) for s in shape)

    def to_params(self, theta) -> ParamVector:
        shape = self.shape_of(theta)
        C = theta[0] if self.free else models.normalize_scale(self.model, shape, self.n)
        return self.model.params(C, shape)

    # model values
    def values(self, theta):
        return models.evaluate(self.model, self.to_params(theta), self.r, self.n)

    def jacobian(self, theta):
        if self.opts.jacobian == "finite_difference":
            return self._fd_jacobian(theta)
        return self._analytic_jacobian(theta)

    def _analytic_jacobian(self, theta):
        m = self.model
        shape = self.shape_of(theta)
        g, dg = models.shape_and_gradient(m, self.r, self.n, shape)
        if self.log_b:
            dg = dg.copy()
            dg[:, 1] *= shape[1]
        if self.free:
            C = theta[0]
            dC = np.ones_like(g) if m.additive else g
            return np.column_stack([dC, dg if m.additive else C * dg])
        g_all, dg_all = models.shape_and_gradient(m, self.r_all, self.n, shape)
        if self.log_b:
            dg_all = dg_all.copy()
            dg_all[:, 1] *= shape[1]
        if m.additive:
            return dg - dg_all.sum(axis=0) / self.n
        S = g_all.sum()
        return dg / S - np.outer(g, dg_all.sum(axis=0)) / S ** 2

    def _fd_jacobian(self, theta):
        J = np.empty((len(self.r), len(theta)))
        for j in range(len(theta)):
            h = self.opts.fd_step * max(abs(theta[j]), 1.0)
            up, down = theta.copy(), theta.copy()
            up[j] += h
            down[j] -= h
            J[:, j] = (self.values(up) - self.values(down)) / (2 * h)
        return J


def jacobian(model, params: ParamVector, n: int, opts: FitOptions = FitOptions()):
    """Model Jacobian in the fitter's coordinates at ``params`` (for diagnostics)."""
    prob = _Problem(models.get_model(model), n, n, opts)
    return prob.jacobian(prob.to_theta(params))


def _seed(model: ModelSpec, y, n, opts):
    try:
        params = models.linearize(model, y, n)
        if opts.scale_mode == "constrained":
            params = models.normalized_params(model, params.shape(model), n)
        models.evaluate(model, params, np.arange(1, len(y) + 1), n)
        return params, "transform"
    except (DomainError, InsufficientData) as exc:
        log.info("%s: transform seed failed (%s), using default seed", model.id, exc)
    defaults = {"a": 0.5, "b": 0.5, "c": 0.0}
    shape = [defaults[k] for k in model.shape_names]
    return models.normalized_params(model, shape, n), "default"


def fit(model, dist, opts: Optional[FitOptions] = None, n: Optional[int] = None) -> FitResult:
    """Least-squares fit of one model family to ranked frequencies.

    Parameters
    ----------
    model
        Model id or :class:`ModelSpec`.
    dist
        :class:`RankedDistribution` or a rank-ordered frequency vector.
    opts
        Iteration controls and scale mode.
    n
        Number of ranks; defaults to the length of the data.

    Raises
    ------
    SingularJacobian
        If the Jacobian at the seed is not of full column rank.
    DomainError
        If the model cannot be evaluated at any usable seed.
    """
    opts = opts or FitOptions()
    model = models.get_model(model)
    y = _observations(dist)
    n = len(y) if n is None else n
    if len(y) < len(model.shape_names) + 2:
        raise InsufficientData(f"{model.id} needs at least {len(model.shape_names) + 2} ranks")
    prob = _Problem(model, n, len(y), opts)

    seed_params, seed_kind = _seed(model, y, n, opts)
    theta = prob.to_theta(seed_params)
    res = y - prob.values(theta)
    sse = float(res @ res)
    initial_sse = sse
    lam = _LAMBDA0
    iterations = 0
    converged = False
    message = "max iterations reached"

    if len(theta) == 0:
        converged, message = True, "no free parameters"
    elif sse == 0.0:
        converged, message = True, "exact fit"

    while not converged and iterations < opts.max_iterations:
        iterations += 1
        J = prob.jacobian(theta)
        if not np.all(np.isfinite(J)):
            raise SingularJacobian(f"{model.id}: non-finite Jacobian", prob.to_params(theta))
        if iterations == 1 and np.linalg.matrix_rank(J) < J.shape[1]:
            raise SingularJacobian(f"{model.id}: rank-deficient Jacobian at seed",
                                   prob.to_params(theta))
        scale = np.sum(J * J, axis=0)
        scale = np.maximum(scale, 1e-12 * max(scale.max(), np.finfo(float).tiny))
        accepted = False
        while lam <= _LAMBDA_MAX:
            A = np.vstack([J, np.diag(np.sqrt(lam * scale))])
            rhs = np.concatenate([res, np.zeros(len(theta))])
            step, *_ = np.linalg.lstsq(A, rhs, rcond=None)
            trial = theta + step
            try:
                trial_res = y - prob.values(trial)
            except DomainError:
                lam *= 10
                continue
            trial_sse = float(trial_res @ trial_res)
            if np.isfinite(trial_sse) and trial_sse < sse:
                accepted = True
                break
            lam *= 10
        if not accepted:
            converged, message = True, "no further decrease"
            break
        near_gn = lam <= 1.0
        drop = sse - trial_sse
        small_step = np.linalg.norm(step) <= opts.param_step_tolerance * (
            np.linalg.norm(theta) + opts.param_step_tolerance)
        theta, res, sse = trial, trial_res, trial_sse
        lam = max(lam / 10, 1e-12)
        if sse == 0.0:
            converged, message = True, "exact fit"
        elif near_gn and drop <= opts.rel_sse_tolerance * (sse + drop):
            converged, message = True, "relative SSE change below tolerance"
        elif near_gn and small_step:
            converged, message = True, "parameter step below tolerance"

    final = prob.to_params(theta)
    if seed_kind == "default":
        message += " (default seed)"
    return _make_result(
        y, model=model.id, params=final, sse=sse, residuals=res, iterations=iterations,
        converged=converged, initial_params=seed_params, initial_sse=initial_sse,
        p=model.p, n=n, scale_mode=opts.scale_mode, message=message,
    )


def failed_result(model, dist, exc: Exception, opts: FitOptions) -> FitResult:
    model = models.get_model(model)
    y = _observations(dist)
    params = getattr(exc, "params", None)
    return _make_result(
        y, model=model.id, params=params, sse=float("nan"), residuals=np.full(len(y), np.nan),
        iterations=0, converged=False, initial_params=None, initial_sse=float("nan"),
        p=model.p, n=len(y), scale_mode=opts.scale_mode, message=str(exc),
        error=type(exc).__name__,
    )


def fit_all(dist, opts: Optional[FitOptions] = None,
            model_ids: Sequence[str] = models.MODEL_IDS) -> list[FitResult]:
    """Fit every family in equation order; a failing family does not stop the batch."""
    opts = opts or FitOptions()
    results = []
    for mid in model_ids:
        try:
            results.append(fit(mid, dist, opts))
        except LetterFitError as exc:
            log.warning("fit of %s failed: %s", mid, exc)
            results.append(failed_result(mid, dist, exc, opts))
    return results


# -- piecewise Gusein-Zade --------------------------------------------------

def _segment_table(y, L):
    """Best plateau constant and SSE for every contiguous rank segment."""
    n = len(y)
    consts = np.zeros((n, n + 1))
    sses = np.full((n, n + 1), np.inf)
    for i in range(n):
        for j in range(i + 1, n + 1):
            yy, ll = y[i:j], L[i:j]
            C = float(yy @ ll / (ll @ ll))
            resid = yy - C * ll
            consts[i, j] = C
            sses[i, j] = float(resid @ resid)
    return consts, sses


def fit_piecewise(dist, segments: int = 2, opts: Optional[FitOptions] = None):
    """Piecewise Gusein-Zade fit with an exhaustive breakpoint search.

    Every placement of ``segments - 1`` breakpoints is scored with the
    closed-form least-squares plateau constant of each segment; the global
    minimum wins, ties going to the lexicographically smallest breakpoints.

    Returns
    -------
    (PiecewiseSpec, FitResult)
    """
    opts = opts or FitOptions()
    y = _observations(dist)
    n = len(y)
    if segments < 2:
        raise ValueError("piecewise fits need at least two segments")
    if n < segments + 1:
        raise TooFewRanks(f"{segments} segments need at least {segments + 1} ranks, got {n}")
    r = np.arange(1, n + 1, dtype=float)
    L = np.log((n + 1) / r)
    consts, sses = _segment_table(y, L)

    # SSEs equal up to rounding count as ties; the earlier placement is kept
    floor = 1e-28 * float(y @ y)
    best, best_sse = None, np.inf
    for cuts in itertools.combinations(range(2, n + 1), segments - 1):
        edges = (0,) + tuple(c - 1 for c in cuts) + (n,)
        total = sum(sses[i, j] for i, j in zip(edges[:-1], edges[1:]))
        if best is None or total < best_sse - (1e-12 * best_sse + floor):
            best, best_sse = cuts, total
    edges = (0,) + tuple(c - 1 for c in best) + (n,)
    spec = PiecewiseSpec(best, [consts[i, j] for i, j in zip(edges[:-1], edges[1:])])
    fitted = models.evaluate_piecewise(spec, r, n)
    res = y - fitted
    sse = float(res @ res)
    result = _make_result(
        y, model="piecewise_gusein_zade", params=spec, sse=sse, residuals=res, iterations=1,
        converged=True, initial_params=spec, initial_sse=sse, p=2 * segments - 2, n=n,
        scale_mode="free", message="exhaustive breakpoint search",
    )
    return spec, result
