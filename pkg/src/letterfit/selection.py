"""SSE, AIC and BIC scoring of fitted models.

With Gaussian errors of unknown, equal variance the maximized
log-likelihood depends on the data only through the SSE, so

    AIC = n ln(SSE/n) + 2 p
    BIC = n ln(SSE/n) + ln(n) p

up to an additive constant that cancels in every comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import models
from .errors import DomainError, LengthMismatch


def sse(observed, fitted) -> float:
    observed = np.asarray(observed, dtype=float)
    fitted = np.asarray(fitted, dtype=float)
    if observed.shape != fitted.shape:
        raise LengthMismatch(f"{observed.shape} vs {fitted.shape}")
    d = observed - fitted
    return float(d @ d)


def _log_likelihood_term(sse_value, n):
    if n < 1:
        raise DomainError("n must be positive")
    if sse_value < 0 or math.isnan(sse_value):
        raise DomainError(f"SSE must be non-negative, got {sse_value}")
    if sse_value == 0:
        return -math.inf
    return n * math.log(sse_value / n)


def aic_from_sse(sse_value: float, n: int, p: int) -> float:
    """AIC without its constant; a perfect fit (SSE = 0) gives ``-inf``."""
    return _log_likelihood_term(sse_value, n) + 2 * p


def bic_from_sse(sse_value: float, n: int, p: int) -> float:
    """BIC without its constant; a perfect fit (SSE = 0) gives ``-inf``."""
    return _log_likelihood_term(sse_value, n) + math.log(n) * p


@dataclass(frozen=True)
class SelectionRow:
    model: str
    eq: int
    p: int
    sse: float
    aic: float
    bic: float
    delta_aic: float
    delta_bic: float
    converged: bool
    perfect: bool = False
    failed: bool = False

    @property
    def warning(self) -> bool:
        return not self.converged or self.failed


@dataclass(frozen=True)
class SelectionTable:
    rows: tuple[SelectionRow, ...]
    best_aic: str
    best_bic: str
    n: int

    def row(self, model: str) -> SelectionRow:
        for row in self.rows:
            if row.model == model:
                return row
        raise KeyError(model)

    def ranking(self, criterion: str = "aic") -> list[str]:
        """Model ids from best to worst under ``criterion``."""
        key = _order_key(criterion)
        return [row.model for row in sorted((r for r in self.rows if not r.failed), key=key)]


def _eq(model_id):
    return models.MODELS[model_id].eq if model_id in models.MODELS else 99


def _order_key(criterion):
    def key(row):
        return (getattr(row, criterion), row.p, row.eq, row.model)
    return key


def _deltas(values):
    finite = [v for v in values if not math.isnan(v)]
    lowest = min(finite) if finite else math.nan
    out = []
    for v in values:
        if math.isnan(v):
            out.append(math.nan)
        elif v == lowest:
            out.append(0.0)
        else:
            out.append(v - lowest)
    return out


def build_table(fits: Sequence, n: int = None) -> SelectionTable:
    """Score fits and express AIC/BIC relative to the best model.

    Rows come out in equation order whatever the input order.  Failed fits
    are kept with NaN scores; best-model ties go to fewer parameters, then
    equation order.
    """
    fits = list(fits)
    if not fits:
        raise ValueError("no fits to compare")
    if n is None:
        n = fits[0].n
    fits.sort(key=lambda f: (_eq(f.model), f.model))
    raw = []
    for f in fits:
        failed = not f.ok or math.isnan(f.sse)
        if failed:
            aic = bic = math.nan
        else:
            aic, bic = aic_from_sse(f.sse, n, f.p), bic_from_sse(f.sse, n, f.p)
        raw.append((f, aic, bic, failed))
    d_aic = _deltas([a for _, a, _, _ in raw])
    d_bic = _deltas([b for _, _, b, _ in raw])
    rows = tuple(
        SelectionRow(f.model, _eq(f.model), f.p, f.sse, aic, bic, da, db,
                     f.converged, (not failed) and f.sse == 0, failed)
        for (f, aic, bic, failed), da, db in zip(raw, d_aic, d_bic)
    )
    usable = [r for r in rows if not r.failed]
    if not usable:
        raise ValueError("every fit failed")
    best_aic = min(usable, key=_order_key("aic")).model
    best_bic = min(usable, key=_order_key("bic")).model
    return SelectionTable(rows, best_aic, best_bic, n)


def residual_table(fits: Sequence) -> tuple[list[str], np.ndarray]:
    """Per-rank residuals, one column per model in the given order."""
    fits = list(fits)
    lengths = {len(f.residuals) for f in fits}
    if len(lengths) > 1:
        raise LengthMismatch("fits cover different numbers of ranks")
    return [f.model for f in fits], np.column_stack([f.residuals for f in fits])
