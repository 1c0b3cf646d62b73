"""
Hankel-matrix construction, ridge-regularized identification and forecasting of SISO LTI models.

The regression vector w multiplies the Hankel columns u⁽⁰⁾ … u⁽⁻ⁿᵇ⁾, y⁽⁻¹⁾ … y⁽⁻ⁿᵃ⁾, so its feedback part
holds -a₁ … -a_{n_a} of the normalized difference equation.
"""

from enum import Enum

import numpy as np
import scipy.linalg

from ltitoolbox.config import config
from ltitoolbox.errors import ArgumentError, NumericalError
from ltitoolbox.lti import simulate
from ltitoolbox.model import DiscreteSignal, Domain, HankelRegression, IdentifiedModel, RationalTransferFunction
from ltitoolbox.utils import PrintUtil


class Solver(Enum):
    """Linear solvers of the ridge problem."""

    QR = "qr"
    CHOLESKY = "cholesky"


class PredictionMode(Enum):
    """Source of the past outputs in the feedback columns."""

    ONE_STEP = "one_step"
    FREE_RUN = "free_run"


def _lagged(x: np.ndarray, lag: int) -> np.ndarray:
    """x delayed by `lag` samples with zero pre-history."""
    if lag == 0:
        return np.array(x)
    return np.concatenate((np.zeros(min(lag, len(x))), x[: max(len(x) - lag, 0)]))


def build_hankel(
    u: DiscreteSignal, y: DiscreteSignal, n_b: int, n_a: int, drop_initial: bool = False
) -> HankelRegression:
    """
    Lag-shifted data matrix of an input/output record.

    Args:
        u (DiscreteSignal): Input.
        y (DiscreteSignal): Output of the same length.
        n_b (int): Number of past inputs besides u⁽⁰⁾.
        n_a (int): Number of past outputs.
        drop_initial (bool): Drop the first max(n_b, n_a) rows, which read the zero pre-history.

    Returns:
        HankelRegression: Matrix, target and lag orders.
    """
    if len(u) != len(y):
        raise ArgumentError(f"Input and output have different lengths: {len(u)} != {len(y)}")
    if n_b < 0 or n_a < 0 or n_b + n_a < 1:
        raise ArgumentError(f"Lag orders must be non-negative with n_b + n_a >= 1, got n_b={n_b}, n_a={n_a}")
    columns = [_lagged(u.samples, lag) for lag in range(n_b + 1)]
    columns += [_lagged(y.samples, lag) for lag in range(1, n_a + 1)]
    matrix = np.column_stack(columns)
    first = max(n_b, n_a) if drop_initial else 0
    if first >= len(u):
        raise ArgumentError(f"Dropping {first} rows leaves no data")
    return HankelRegression(matrix[first:], y.samples[first:], n_b, n_a, first)


def _condition(matrix: np.ndarray, s: np.ndarray, alpha: float) -> float:
    """Condition number of HᵀH + αI from the singular values `s` of H."""
    s_max = float(s[0]) if len(s) else 0.0
    # a wide H has zero singular values beyond its row count
    s_min = float(s[-1]) if len(s) == matrix.shape[1] else 0.0
    denominator = s_min**2 + alpha
    return (s_max**2 + alpha) / denominator if denominator > 0 else np.inf


def _solve(regression: HankelRegression, alpha: float, solver: Solver) -> tuple[np.ndarray, float]:
    """Ridge solution and the condition number of the normal equations."""
    if not alpha >= 0:
        raise ArgumentError(f"Ridge parameter must be non-negative, got {alpha}")
    h, target = regression.data_matrix, regression.target
    cols = h.shape[1]
    s = np.linalg.svd(h, compute_uv=False)
    condition = _condition(h, s, alpha)
    if condition >= config["sysid"]["max-condition"].get(float):
        if alpha == 0:
            raise NumericalError(f"HᵀH is singular to working precision (condition {condition:.3g}); use alpha > 0")
        PrintUtil.log_warning(f"HᵀH + αI is ill-conditioned (condition {condition:.3g}) at alpha={alpha}")

    if solver == Solver.QR:
        augmented = np.vstack((h, np.sqrt(alpha) * np.eye(cols)))
        rhs = np.concatenate((target, np.zeros(cols)))
        q, r = scipy.linalg.qr(augmented, mode="economic")
        w = scipy.linalg.solve_triangular(r, q.T @ rhs)
    else:
        normal = h.T @ h + alpha * np.eye(cols)
        try:
            factor = scipy.linalg.cho_factor(normal)
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"HᵀH + αI is not positive definite: {e}") from e
        w = scipy.linalg.cho_solve(factor, h.T @ target)

    hty = h.T @ target
    residual = np.linalg.norm(h.T @ (h @ w) + alpha * w - hty)
    if residual >= 1e-8 * max(np.linalg.norm(hty), np.finfo(float).tiny):
        PrintUtil.log_warning(
            f"Ridge solution residual {residual:.3g} exceeds 1e-8 x ‖Hᵀy‖ (condition {condition:.3g})"
        )
    return w, condition


def ridge_solve(regression: HankelRegression, alpha: float, solver: Solver | str = None) -> np.ndarray:
    """
    Ridge regression w = (HᵀH + αI)⁻¹·Hᵀy⁽⁰⁾, never by explicit inversion.

    A solution that misses the relative residual bound of 1e-8 is returned with a logged warning.

    Args:
        regression (HankelRegression): Data matrix and target.
        alpha (float): Non-negative ridge parameter.
        solver (Solver | str): `qr` on the augmented system [H; √α·I] or `cholesky` on the normal equations;
            defaults to `sysid.solver`.

    Raises:
        NumericalError: If HᵀH is singular at alpha = 0.
    """
    solver = Solver(solver or config["sysid"]["solver"].get(str))
    return _solve(regression, alpha, solver)[0]


def identify(
    u: DiscreteSignal,
    y: DiscreteSignal,
    n_b: int,
    n_a: int,
    alpha: float = 0.0,
    drop_initial: bool = False,
    solver: Solver | str = None,
) -> IdentifiedModel:
    """Build the Hankel regression, solve it and report the model with its diagnostics."""
    solver = Solver(solver or config["sysid"]["solver"].get(str))
    regression = build_hankel(u, y, n_b, n_a, drop_initial)
    w, condition = _solve(regression, alpha, solver)
    residual_norm = float(np.linalg.norm(regression.target - regression.data_matrix @ w))
    model = IdentifiedModel(w, n_b, n_a, alpha, residual_norm, condition, solver.value)
    PrintUtil.log(f"Identified {model} (residual {residual_norm:.3g}, condition {condition:.3g})")
    return model


def model_tf(model: IdentifiedModel, dt: float) -> RationalTransferFunction:
    """z-domain transfer function of an identified model."""
    return RationalTransferFunction(model.b, model.a, Domain.Z, dt)


def predict(
    w,
    u: DiscreteSignal,
    mode: PredictionMode | str,
    n_b: int,
    n_a: int,
    y: DiscreteSignal = None,
) -> DiscreteSignal:
    """
    Forecast the output of a regression model.

    `one_step` fills the feedback columns with the measured outputs `y`; `free_run` feeds the predictions back,
    starting at rest.
    """
    mode = PredictionMode(mode)
    w = np.asarray(w, dtype=float)
    if len(w) != n_b + 1 + n_a:
        raise ArgumentError(f"Coefficient vector of length {len(w)} does not match n_b + 1 + n_a = {n_b + 1 + n_a}")
    if mode == PredictionMode.ONE_STEP:
        if n_a > 0 and y is None:
            raise ArgumentError("One-step prediction needs the measured output")
        measured = y if y is not None else DiscreteSignal(np.zeros(len(u)))
        regression = build_hankel(u, measured, n_b, n_a)
        return u.with_samples(regression.data_matrix @ w)
    a = np.concatenate(([1.0], -w[n_b + 1 :]))
    tf = RationalTransferFunction(w[: n_b + 1], a, Domain.Z, u.dt or 1.0)
    return simulate(tf, u)


def regression_report(model: IdentifiedModel) -> dict:
    """Diagnostics of an identification, for the JSON report."""
    return {
        "n_b": model.n_b,
        "n_a": model.n_a,
        "alpha": model.alpha,
        "solver": model.solver,
        "residual_norm": model.residual_norm,
        "condition": model.condition,
        "w": list(model.w),
        "b": list(model.b),
        "a": list(model.a),
    }
