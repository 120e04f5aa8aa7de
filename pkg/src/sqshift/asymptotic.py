"""Growth-law models for the exact sums, residuals, and least-squares fits.

Two candidate main-term models are evaluated here, both linear in the
(c1, c2) parameters:

    shifted-sum model:  (c1/2) x ln x + ((2 gamma - 1/2) c1 + c2) x   for S(x)
    square-sum model:    c1 t ln t   + ((2 gamma - 1)   c1 + c2) t   for T(t)

Since no converged values exist for the product constants (see `euler`),
c1 and c2 are treated as free parameters: they can be fitted from exact
data by linear least squares, and the independently fitted exponent of a
generic growth law y = c * x * (ln x)**beta says which shape the data
actually follows.  Fits work in ln-transformed coordinates, unweighted;
exact sums are converted to binary64 once, at the residual boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dyadic import DyadicRational
from .euler import EULER_GAMMA
from .summatory import DEFAULT_SEGMENT_SIZE, SquareValueCache, sum_block

KIND_SHIFTED = "shifted-sum"
KIND_SQUARES = "square-sum"


@dataclass(frozen=True)
class ModelParams:
    c1: float
    c2: float
    gamma: float = EULER_GAMMA
    kind: str = KIND_SHIFTED


@dataclass(frozen=True)
class ResidualPoint:
    """exact - model at one x, with the residual rescaled by x**theta."""

    x: int
    exact: DyadicRational
    exact_f64: float
    model: float
    residual: float
    scaled: float
    theta: float


@dataclass(frozen=True)
class FitResult:
    """Least-squares fit of y = coefficient * x * (ln x)**exponent."""

    coefficient: float
    exponent: float
    rms_relative_error: float
    points_used: int


@dataclass(frozen=True)
class ModelConstantsFit:
    """Least-squares (c1, c2) for the shifted-sum model."""

    c1: float
    c2: float
    rms_relative_error: float
    points_used: int
    gamma: float = field(default=EULER_GAMMA)


def model_shifted_sum(x: float, params: ModelParams) -> float:
    """(c1/2) x ln x + ((2 gamma - 1/2) c1 + c2) x, for x >= 2."""
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    return 0.5 * params.c1 * x * math.log(x) + (
        (2.0 * params.gamma - 0.5) * params.c1 + params.c2
    ) * x


def model_square_sum(t: float, params: ModelParams) -> float:
    """c1 t ln t + ((2 gamma - 1) c1 + c2) t, for t >= 2."""
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    return params.c1 * t * math.log(t) + (
        (2.0 * params.gamma - 1.0) * params.c1 + params.c2
    ) * t


def residual_table(
    xs: list[int],
    params: ModelParams,
    theta: float = 0.75,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cache: SquareValueCache | None = None,
) -> list[ResidualPoint]:
    """Exact S(x) against the shifted-sum model over the given points.

    scaled = residual / x**theta probes candidate error-term exponents;
    theta = 0 leaves the raw residual.
    """
    out = []
    for x in xs:
        if x < 2:
            raise ValueError(f"residual points need x >= 2, got {x}")
        rep = sum_block(x, segment_size=segment_size, threads=threads, cache=cache)
        model = model_shifted_sum(rep.x, params)
        residual = rep.value_f64 - model
        out.append(
            ResidualPoint(
                x=rep.x,
                exact=rep.value,
                exact_f64=rep.value_f64,
                model=model,
                residual=residual,
                scaled=residual / rep.x**theta,
                theta=theta,
            )
        )
    return out


def _check_points(points, min_x: float) -> tuple[np.ndarray, np.ndarray]:
    if len(points) < 3:
        raise ValueError(f"need at least 3 points, got {len(points)}")
    x = np.array([float(p[0]) for p in points], dtype=np.float64)
    y = np.array([float(p[1]) for p in points], dtype=np.float64)
    if np.any(x < min_x):
        raise ValueError(f"all x must be >= {min_x}")
    if len(set(x.tolist())) < 2:
        raise ValueError("rank-deficient design: all x equal")
    return x, y


def fit_log_power(
    points: list[tuple[float, float]],
    fixed_exponent: float | None = None,
) -> FitResult:
    """Fit y = c * x * (ln x)**beta by least squares on ln(y/x) vs ln ln x.

    With fixed_exponent given, only ln c is fitted.  Requires >= 3 points,
    x >= 3 (so ln ln x > 0) and y > 0.
    """
    x, y = _check_points(points, 3.0)
    if np.any(y <= 0):
        raise ValueError("all y must be positive")
    u = np.log(np.log(x))
    v = np.log(y / x)
    if fixed_exponent is None:
        design = np.column_stack([u, np.ones_like(u)])
        (beta, ln_c), *_ = np.linalg.lstsq(design, v, rcond=None)
    else:
        beta = float(fixed_exponent)
        ln_c = float(np.mean(v - beta * u))
    c = math.exp(ln_c)
    fitted = c * x * np.log(x) ** beta
    rms = float(np.sqrt(np.mean(((fitted - y) / y) ** 2)))
    return FitResult(float(c), float(beta), rms, len(points))


def fit_model_constants(
    points: list[tuple[float, float]],
    gamma: float = EULER_GAMMA,
) -> ModelConstantsFit:
    """Least-squares (c1, c2) for y ~ (c1/2) x ln x + ((2 gamma - 1/2) c1 + c2) x.

    Linear regression in the basis {x ln x, x} (columns normalized before
    solving for conditioning), then mapped back to (c1, c2).
    """
    x, y = _check_points(points, 2.0)
    cols = np.column_stack([x * np.log(x), x])
    norms = np.linalg.norm(cols, axis=0)
    (a, b), *_ = np.linalg.lstsq(cols / norms, y, rcond=None)
    a /= norms[0]
    b /= norms[1]
    c1 = 2.0 * a
    c2 = b - (2.0 * gamma - 0.5) * c1
    params = ModelParams(c1=float(c1), c2=float(c2), gamma=gamma)
    fitted = np.array([model_shifted_sum(v, params) for v in x])
    rms = float(np.sqrt(np.mean(((fitted - y) / y) ** 2)))
    return ModelConstantsFit(float(c1), float(c2), rms, len(points), gamma)
