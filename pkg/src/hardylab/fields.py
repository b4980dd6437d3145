"""Closed-form pointwise fields derived from W(z) = |f(z)|^p (1-|z|^2)^q.

The quadrature layer integrates four fields: W itself, its gradient, its
radial derivative, and the Laplacian density

    G = (1-|z|^2)^q * p^2 |f|^{p-2} |f'|^2
        - 4 p q (1-|z|^2)^{q-1} |f|^{p-2} Re(z f' conj(f))
        + |f|^p * 4 q ( (q-1) |z|^2 (1-|z|^2)^{q-2} - (1-|z|^2)^{q-1} ).

The first term uses the identity Laplacian(|f|^p) = p^2 |f|^{p-2} |f'|^2 for
analytic f; the cross and weight terms follow from the product rule with
grad(1-|z|^2)^q = -2 q (1-|z|^2)^{q-1} (x, y).

Array entry points (`*_values`) evaluate on numpy arrays of complex points
and are what the quadrature nodes call; the scalar wrappers add domain checks
and singularity flagging near zeros of f (guard radius 1e-10).  Near a zero
of order k the gradient scales like |z-z0|^{kp-1} and G like |z-z0|^{kp-2},
so the flags are order-aware.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import AnalyticFunction, eval_at, nearest_zero

GUARD_RADIUS = 1e-10


class SingularPointError(ValueError):
    """Field evaluated exactly at a zero where it is unbounded."""


@dataclass(frozen=True)
class MeanParams:
    """Exponent pair (p, q) of the weighted mean, with an optional radius."""

    p: float
    q: float
    r: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))
        if not (0.0 < self.p < math.inf):
            raise ValueError(f"p must satisfy 0 < p < inf, got {self.p}")
        if not (0.0 <= self.q < math.inf):
            raise ValueError(f"q must satisfy 0 <= q < inf, got {self.q}")
        if self.r is not None:
            object.__setattr__(self, "r", float(self.r))
            if not (0.0 < self.r < 1.0):
                raise ValueError(f"r must satisfy 0 < r < 1, got {self.r}")


@dataclass(frozen=True)
class FieldValue:
    value: float
    singular: bool
    nearest_zero_distance: float


@dataclass(frozen=True)
class GradientValue:
    dx: float
    dy: float
    singular: bool
    nearest_zero_distance: float


def _abs_pow(m: np.ndarray, e: float) -> np.ndarray:
    """m**e for m >= 0 with the conventional limits at m == 0.

    0**e is 0 for e > 0, 1 for e == 0 and +inf for e < 0 (the p > 2
    underflow branch of |f|^{p-2} therefore returns 0 at zeros of f).
    """
    with np.errstate(divide="ignore", over="ignore"):
        return np.power(m, e)


def w_values(f: AnalyticFunction, params: MeanParams, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    m = np.abs(f._val(z))
    w = _abs_pow(m, params.p)
    if params.q != 0.0:
        w = w * (1.0 - np.abs(z) ** 2) ** params.q
    return w


def grad_w_values(
    f: AnalyticFunction, params: MeanParams, z: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    z = np.asarray(z, dtype=complex)
    p, q = params.p, params.q
    fv = f._val(z)
    dv = f._dval(z)
    m = np.abs(fv)
    s2 = np.abs(z) ** 2
    rho = 1.0 - s2
    with np.errstate(invalid="ignore", over="ignore"):
        cross = dv * np.conj(fv)
        mp2 = _abs_pow(m, p - 2.0)
        gx = p * mp2 * cross.real
        gy = p * mp2 * (-cross.imag)
        if q != 0.0:
            wq = rho**q
            gx = wq * gx + _abs_pow(m, p) * (-2.0 * q) * rho ** (q - 1.0) * z.real
            gy = wq * gy + _abs_pow(m, p) * (-2.0 * q) * rho ** (q - 1.0) * z.imag
    return gx, gy


def g_values(f: AnalyticFunction, params: MeanParams, z: np.ndarray) -> np.ndarray:
    """Laplacian density of W.  Unbounded entries (exact zeros with small
    exponent) come back as inf/nan; the quadrature layer treats any
    non-finite node as a cell collision and subdivides."""
    z = np.asarray(z, dtype=complex)
    p, q = params.p, params.q
    fv = f._val(z)
    dv = f._dval(z)
    m = np.abs(fv)
    s2 = np.abs(z) ** 2
    rho = 1.0 - s2
    with np.errstate(invalid="ignore", over="ignore"):
        mp2 = _abs_pow(m, p - 2.0)
        g = p * p * mp2 * np.abs(dv) ** 2
        if q != 0.0:
            g = rho**q * g
            g = g - 4.0 * p * q * rho ** (q - 1.0) * mp2 * (z * dv * np.conj(fv)).real
            g = g + _abs_pow(m, p) * 4.0 * q * (
                (q - 1.0) * s2 * rho ** (q - 2.0) - rho ** (q - 1.0)
            )
    return g


def hs_density_values(f: AnalyticFunction, p: float, z: np.ndarray) -> np.ndarray:
    """|f|^{p-2} |f'|^2, the q = 0 Laplacian density divided by p^2."""
    z = np.asarray(z, dtype=complex)
    m = np.abs(f._val(z))
    with np.errstate(invalid="ignore", over="ignore"):
        return _abs_pow(m, p - 2.0) * np.abs(f._dval(z)) ** 2


def radial_deriv_w_values(
    f: AnalyticFunction, params: MeanParams, z: np.ndarray
) -> np.ndarray:
    """dW/dr at z = r e^{i theta}, requires z != 0."""
    z = np.asarray(z, dtype=complex)
    p, q = params.p, params.q
    fv = f._val(z)
    dv = f._dval(z)
    m = np.abs(fv)
    s = np.abs(z)
    rho = 1.0 - s * s
    with np.errstate(invalid="ignore", over="ignore"):
        # e^{i theta} = z / s
        radial = p * _abs_pow(m, p - 2.0) * ((z / s) * dv * np.conj(fv)).real
        if q != 0.0:
            radial = rho**q * radial + _abs_pow(m, p) * (-2.0 * q) * s * rho ** (q - 1.0)
    return radial


# --------------------------------------------------------------------------
# scalar API with singularity flagging
# --------------------------------------------------------------------------

def _interior(z: complex) -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"field evaluation requires |z| < 1, got |z| = {abs(z)}")
    return z


def _zero_context(f: AnalyticFunction, z: complex) -> tuple[float, int]:
    dist, zero = nearest_zero(f, z)
    return dist, (zero.order if zero is not None else 0)


def eval_W(f: AnalyticFunction, params: MeanParams, z: complex) -> float:
    z = _interior(z)
    return float(w_values(f, params, np.asarray(z)))


def eval_grad_W(f: AnalyticFunction, params: MeanParams, z: complex) -> GradientValue:
    z = _interior(z)
    dist, order = _zero_context(f, z)
    kp = order * params.p
    if dist == 0.0:
        if kp > 1.0:
            return GradientValue(0.0, 0.0, False, 0.0)
        return GradientValue(math.nan, math.nan, True, 0.0)
    gx, gy = grad_w_values(f, params, np.asarray(z))
    singular = dist <= GUARD_RADIUS and kp < 1.0
    return GradientValue(float(gx), float(gy), singular, dist)


def eval_G(f: AnalyticFunction, params: MeanParams, z: complex) -> FieldValue:
    z = _interior(z)
    dist, order = _zero_context(f, z)
    if dist == 0.0 and params.p < 2.0:
        raise SingularPointError(
            f"G is evaluated exactly at a zero of f (z = {z}) with p = {params.p} < 2"
        )
    value = float(g_values(f, params, np.asarray(z)))
    singular = dist <= GUARD_RADIUS and order * params.p < 2.0
    return FieldValue(value, singular, dist)


def eval_radial_deriv_W(f: AnalyticFunction, params: MeanParams, z: complex) -> FieldValue:
    z = _interior(z)
    if z == 0:
        raise ValueError("radial derivative needs 0 < |z| < 1")
    dist, order = _zero_context(f, z)
    kp = order * params.p
    if dist == 0.0:
        if kp > 1.0:
            # |f|^p term vanishes to order kp; only the weight term survives
            val = 0.0
            if params.q != 0.0:
                val = float(
                    _abs_pow(np.asarray(abs(eval_at(f, z))), params.p)
                    * (-2.0 * params.q)
                    * abs(z)
                    * (1.0 - abs(z) ** 2) ** (params.q - 1.0)
                )
            return FieldValue(val, False, 0.0)
        return FieldValue(math.nan, True, 0.0)
    value = float(radial_deriv_w_values(f, params, np.asarray(z)))
    singular = dist <= GUARD_RADIUS and kp < 1.0
    return FieldValue(value, singular, dist)
