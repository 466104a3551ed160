"""The ten rank-frequency families and the piecewise Gusein-Zade function.

Every family is written as ``f = C * g(r)`` (multiplicative scale) or
``f = C + h(r)`` (additive scale), where ``g``/``h`` depend on the shape
parameters only.  That split drives the normalization of ``C`` and the
Jacobian used by the fitter.

==================  ===  =====================================
id                  p    f(r)
==================  ===  =====================================
gusein_zade         0    C ln((n+1)/r)
power_law           1    C / r^a
exponential         1    C exp(-a r)
logarithmic         1    C - a ln r
weibull             2    C (ln((n+1)/r))^a
quadratic_log       2    C - a ln r - b (ln r)^2
yule                2    C b^r / r^a
menzerath_altmann   2    C exp(-b/r) / r^a
cocho_beta          2    C (n+1-r)^b / r^a
frappat             3    C + b r + c exp(-a r)
==================  ===  =====================================
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .errors import DomainError, InsufficientData


@dataclass(frozen=True)
class ParamVector:
    """Scale ``C`` plus whichever of ``a``, ``b``, ``c`` the family uses."""

    C: float
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None

    def as_dict(self) -> dict[str, float]:
        return {k: float(v) for k, v in
                (("a", self.a), ("b", self.b), ("c", self.c), ("C", self.C)) if v is not None}

    def shape(self, model: "ModelSpec") -> tuple[float, ...]:
        values = tuple(getattr(self, name) for name in model.shape_names)
        if any(v is None for v in values):
            raise ValueError(f"{model.id} needs parameters {model.shape_names}")
        return values

    @classmethod
    def from_dict(cls, d: Mapping[str, float]) -> "ParamVector":
        return cls(**{k: float(v) for k, v in d.items()})


@dataclass(frozen=True)
class ModelSpec:
    id: str
    eq: int
    title: str
    shape_names: tuple[str, ...]
    additive: bool
    needs_n: bool
    shape_fn: Callable = field(repr=False)
    shape_grad: Callable = field(repr=False)
    check: Optional[Callable] = field(default=None, repr=False)
    penalty_p: Optional[int] = None

    @property
    def p(self) -> int:
        """Free-parameter count used in AIC/BIC penalties.

        Equals the number of shape parameters (the normalization-bound ``C``
        is not counted) except for Weibull, which is charged two parameters
        as in the published model-comparison table.
        """
        return len(self.shape_names) if self.penalty_p is None else self.penalty_p

    def params(self, C, shape: Sequence[float]) -> ParamVector:
        return ParamVector(float(C), **{k: float(v) for k, v in zip(self.shape_names, shape)})


def _gz_log(r, n):
    return np.log((n + 1) / r)


def _check_yule(shape):
    if not shape[1] > 0:
        raise DomainError(f"yule needs b > 0, got b={shape[1]}")


def _stack(*cols):
    return np.column_stack(cols) if cols else None


MODELS: dict[str, ModelSpec] = {}


def _register(spec: ModelSpec):
    MODELS[spec.id] = spec
    return spec


_register(ModelSpec(
    "gusein_zade", 1, "Gusein-Zade", (), False, True,
    lambda r, n, s: _gz_log(r, n),
    lambda r, n, s: np.zeros((len(r), 0)),
))
_register(ModelSpec(
    "power_law", 2, "power-law", ("a",), False, False,
    lambda r, n, s: r ** -s[0],
    lambda r, n, s: _stack(-np.log(r) * r ** -s[0]),
))
_register(ModelSpec(
    "exponential", 3, "exponential", ("a",), False, False,
    lambda r, n, s: np.exp(-s[0] * r),
    lambda r, n, s: _stack(-r * np.exp(-s[0] * r)),
))
_register(ModelSpec(
    "logarithmic", 4, "logarithmic", ("a",), True, False,
    lambda r, n, s: -s[0] * np.log(r),
    lambda r, n, s: _stack(-np.log(r)),
))
_register(ModelSpec(
    "weibull", 5, "Weibull", ("a",), False, True,
    lambda r, n, s: _gz_log(r, n) ** s[0],
    lambda r, n, s: _stack(np.log(_gz_log(r, n)) * _gz_log(r, n) ** s[0]),
    penalty_p=2,
))
_register(ModelSpec(
    "quadratic_log", 6, "quadratic logarithmic", ("a", "b"), True, False,
    lambda r, n, s: -s[0] * np.log(r) - s[1] * np.log(r) ** 2,
    lambda r, n, s: _stack(-np.log(r), -np.log(r) ** 2),
))
_register(ModelSpec(
    "yule", 7, "Yule", ("a", "b"), False, False,
    lambda r, n, s: s[1] ** r * r ** -s[0],
    lambda r, n, s: _stack(-np.log(r) * s[1] ** r * r ** -s[0],
                           r * s[1] ** (r - 1) * r ** -s[0]),
    _check_yule,
))
_register(ModelSpec(
    "menzerath_altmann", 8, "Menzerath-Altmann/Inverse-Gamma", ("a", "b"), False, False,
    lambda r, n, s: np.exp(-s[1] / r) * r ** -s[0],
    lambda r, n, s: _stack(-np.log(r) * np.exp(-s[1] / r) * r ** -s[0],
                           -np.exp(-s[1] / r) * r ** (-s[0] - 1)),
))
_register(ModelSpec(
    "cocho_beta", 9, "Cocho/Beta", ("a", "b"), False, True,
    lambda r, n, s: (n + 1 - r) ** s[1] * r ** -s[0],
    lambda r, n, s: _stack(-np.log(r) * (n + 1 - r) ** s[1] * r ** -s[0],
                           np.log(n + 1 - r) * (n + 1 - r) ** s[1] * r ** -s[0]),
))
_register(ModelSpec(
    "frappat", 10, "Frappat", ("a", "b", "c"), True, False,
    lambda r, n, s: s[1] * r + s[2] * np.exp(-s[0] * r),
    lambda r, n, s: _stack(-s[2] * r * np.exp(-s[0] * r), r.astype(float), np.exp(-s[0] * r)),
))

#: Families in equation order.
MODEL_IDS: tuple[str, ...] = tuple(MODELS)


def get_model(model) -> ModelSpec:
    if isinstance(model, ModelSpec):
        return model
    try:
        return MODELS[model]
    except KeyError:
        raise KeyError(f"unknown model {model!r}; choose from {', '.join(MODEL_IDS)}") from None


def _ranks(r, n):
    r = np.asarray(r, dtype=float)
    if np.any(r < 1) or np.any(r > n):
        raise DomainError(f"ranks must lie in 1..{n}")
    return r


def _shape_values(model, r, n, shape):
    if model.check is not None:
        model.check(shape)
    with np.errstate(all="ignore"):
        g = model.shape_fn(r, n, shape)
    if not np.all(np.isfinite(g)):
        raise DomainError(f"{model.id} is not finite at shape parameters {tuple(shape)}")
    return g


def evaluate(model, params: ParamVector, r, n: int):
    """Model frequency at rank(s) ``r`` for an alphabet of ``n`` symbols.

    Returns a float for scalar ``r`` and an array otherwise.
    """
    model = get_model(model)
    scalar = np.ndim(r) == 0
    rr = np.atleast_1d(_ranks(r, n))
    shape = params.shape(model)
    g = _shape_values(model, rr, n, shape)
    f = params.C + g if model.additive else params.C * g
    return float(f[0]) if scalar else f


def shape_and_gradient(model: ModelSpec, r, n, shape):
    """``g`` (or ``h``) and its derivative with respect to the shape parameters."""
    r = np.asarray(r, dtype=float)
    g = _shape_values(model, r, n, shape)
    with np.errstate(all="ignore"):
        dg = model.shape_grad(r, n, shape)
    return g, dg


def normalize_scale(model, shape, n: int) -> float:
    """Scale ``C`` making the frequencies over ranks 1..n sum to one.

    ``shape`` is a :class:`ParamVector` or the tuple of shape parameters.
    """
    model = get_model(model)
    if isinstance(shape, ParamVector):
        shape = shape.shape(model)
    r = np.arange(1, n + 1, dtype=float)
    g = _shape_values(model, r, n, tuple(shape))
    total = g.sum()
    if model.additive:
        return (1.0 - total) / n
    if not total > 0:
        raise DomainError(f"{model.id}: shape sums to {total}, cannot normalize")
    return 1.0 / total


def normalized_params(model, shape, n: int) -> ParamVector:
    model = get_model(model)
    return model.params(normalize_scale(model, shape, n), shape)


# -- transform (linearized) fits -------------------------------------------

def _ols(X, y):
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    return coef


def linearize(model, dist, n: Optional[int] = None) -> ParamVector:
    """Starting parameters from a linear regression on transformed variables.

    Families whose log is linear in some function of ``r`` are regressed on
    ``ln f`` (ranks with ``f <= 0`` are skipped).  ``logarithmic`` and
    ``quadratic_log`` are linear already and use every rank.  ``frappat`` has
    no linear form; it starts from the exponential transform fit with
    ``b = 0`` and the exponential amplitude as ``c``.
    """
    model = get_model(model)
    f = np.asarray(getattr(dist, "frequencies", dist), dtype=float)
    if n is None:
        n = len(f)
    r = np.arange(1, len(f) + 1, dtype=float)
    pos = f > 0
    mid = model.id

    if mid in ("logarithmic", "quadratic_log"):
        k = len(model.shape_names)
        if len(f) < k + 2:
            raise InsufficientData(f"{mid} needs at least {k + 2} ranks")
        lr = np.log(r)
        cols = [np.ones_like(r), -lr] + ([-lr ** 2] if mid == "quadratic_log" else [])
        coef = _ols(np.column_stack(cols), f)
        return model.params(coef[0], coef[1:])

    need = len(model.shape_names) + 2 if mid != "gusein_zade" else 1
    if pos.sum() < need:
        raise InsufficientData(f"{mid} needs at least {need} ranks with positive frequency")

    if mid == "gusein_zade":
        L = _gz_log(r, n)
        return ParamVector(float(f @ L / (L @ L)))

    r, y = r[pos], np.log(f[pos])
    one = np.ones_like(r)
    if mid == "power_law":
        c = _ols(np.column_stack([one, np.log(r)]), y)
        return model.params(np.exp(c[0]), [-c[1]])
    if mid in ("exponential", "frappat"):
        c = _ols(np.column_stack([one, r]), y)
        if mid == "exponential":
            return model.params(np.exp(c[0]), [-c[1]])
        return model.params(0.0, [-c[1], 0.0, np.exp(c[0])])
    if mid == "weibull":
        c = _ols(np.column_stack([one, np.log(_gz_log(r, n))]), y)
        return model.params(np.exp(c[0]), [c[1]])
    if mid == "yule":
        c = _ols(np.column_stack([one, np.log(r), r]), y)
        return model.params(np.exp(c[0]), [-c[1], np.exp(c[2])])
    if mid == "menzerath_altmann":
        c = _ols(np.column_stack([one, np.log(r), 1.0 / r]), y)
        return model.params(np.exp(c[0]), [-c[1], -c[2]])
    if mid == "cocho_beta":
        c = _ols(np.column_stack([one, np.log(r), np.log(n + 1 - r)]), y)
        return model.params(np.exp(c[0]), [-c[1], c[2]])
    raise KeyError(mid)  # pragma: no cover


# -- piecewise Gusein-Zade ---------------------------------------------------

@dataclass(frozen=True)
class PiecewiseSpec:
    """Plateau constants for consecutive rank segments.

    ``breakpoints[k]`` is the first rank of segment ``k + 2``; segment one
    always starts at rank 1.
    """

    breakpoints: tuple[int, ...]
    constants: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(int(b) for b in self.breakpoints))
        object.__setattr__(self, "constants", tuple(float(c) for c in self.constants))
        if len(self.constants) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more constant than breakpoints")
        if any(b <= 1 for b in self.breakpoints) or any(
                x >= y for x, y in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be increasing ranks greater than 1")

    @property
    def segments(self) -> int:
        return len(self.constants)

    def segment_of(self, r):
        return np.searchsorted(np.asarray(self.breakpoints), np.asarray(r), side="right")


def evaluate_piecewise(spec: PiecewiseSpec, r, n: int):
    """``C_k ln((n+1)/r)`` with ``k`` the segment containing ``r``."""
    scalar = np.ndim(r) == 0
    rr = np.atleast_1d(_ranks(r, n))
    if spec.breakpoints and spec.breakpoints[-1] > n:
        raise DomainError(f"breakpoint {spec.breakpoints[-1]} beyond n={n}")
    f = np.asarray(spec.constants)[spec.segment_of(rr)] * _gz_log(rr, n)
    return float(f[0]) if scalar else f
