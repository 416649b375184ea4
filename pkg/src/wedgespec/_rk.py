"""Adaptive Runge-Kutta kernel for w'' = q(x) w with complex w.

The coefficient has the fixed shape q(x) = A*x**p + B on a real interval,
which covers both half-line expressions after reflecting the left line onto
[0, inf).  A Dormand-Prince 5(4) embedded pair is used; the state is
renormalized by its max modulus whenever it crosses ``rescale_threshold``
and the logs of the factors taken out are accumulated (the equation is
linear, so rescaling is exact).

Compiled with numba when available; the pure-Python fallback is identical
but slow.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

try:
    import numba

    def _jit(f):
        return numba.njit(cache=True, nogil=True)(f)

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    def _jit(f):
        return f

    HAVE_NUMBA = False


STATUS_OK = 0
STATUS_STEP_LIMIT = 1
STATUS_NON_FINITE = 2


@_jit
def dopri_q(A, B, p, x_from, x_to, w, dw, rtol, atol, max_steps,
            rescale_threshold, trace_x, trace_logw):
    """Integrate (w, w') of w'' = (A x**p + B) w from x_from to x_to.

    Returns (w, dw, log_scale, steps, status, ntrace).  ``trace_x`` and
    ``trace_logw`` are caller-allocated; pass length-0 arrays to disable
    tracing.  Traced values are log|w| with the accumulated scale added
    back, so they are logs of the true solution modulus.
    """
    dirn = 1.0 if x_to >= x_from else -1.0
    x = x_from
    ls = 0.0
    q0 = A * x ** p + B
    span = abs(x_to - x_from)
    h = dirn * min(span, 0.05 / (1.0 + math.sqrt(abs(q0))))
    if h == 0.0:
        h = dirn * 1e-8

    k1w = dw
    k1d = q0 * w

    cap = trace_x.shape[0]
    ntrace = 0
    if cap > 0:
        trace_x[0] = x
        trace_logw[0] = math.log(abs(w) + 1e-300)
        ntrace = 1

    steps = 0
    status = STATUS_OK
    while True:
        if dirn * (x_to - x) <= 0.0:
            break
        if steps >= max_steps:
            status = STATUS_STEP_LIMIT
            break
        steps += 1
        remaining = x_to - x
        last = abs(h) >= abs(remaining)
        if last:
            h = remaining

        # Dormand-Prince stages; f(x, (w, dw)) = (dw, q(x) w)
        y2w = w + h * (0.2 * k1w)
        y2d = dw + h * (0.2 * k1d)
        k2w = y2d
        k2d = (A * (x + 0.2 * h) ** p + B) * y2w

        y3w = w + h * (0.075 * k1w + 0.225 * k2w)
        y3d = dw + h * (0.075 * k1d + 0.225 * k2d)
        k3w = y3d
        k3d = (A * (x + 0.3 * h) ** p + B) * y3w

        y4w = w + h * ((44.0 / 45.0) * k1w - (56.0 / 15.0) * k2w + (32.0 / 9.0) * k3w)
        y4d = dw + h * ((44.0 / 45.0) * k1d - (56.0 / 15.0) * k2d + (32.0 / 9.0) * k3d)
        k4w = y4d
        k4d = (A * (x + 0.8 * h) ** p + B) * y4w

        y5w = w + h * ((19372.0 / 6561.0) * k1w - (25360.0 / 2187.0) * k2w
                       + (64448.0 / 6561.0) * k3w - (212.0 / 729.0) * k4w)
        y5d = dw + h * ((19372.0 / 6561.0) * k1d - (25360.0 / 2187.0) * k2d
                        + (64448.0 / 6561.0) * k3d - (212.0 / 729.0) * k4d)
        k5w = y5d
        k5d = (A * (x + (8.0 / 9.0) * h) ** p + B) * y5w

        y6w = w + h * ((9017.0 / 3168.0) * k1w - (355.0 / 33.0) * k2w
                       + (46732.0 / 5247.0) * k3w + (49.0 / 176.0) * k4w
                       - (5103.0 / 18656.0) * k5w)
        y6d = dw + h * ((9017.0 / 3168.0) * k1d - (355.0 / 33.0) * k2d
                        + (46732.0 / 5247.0) * k3d + (49.0 / 176.0) * k4d
                        - (5103.0 / 18656.0) * k5d)
        k6w = y6d
        k6d = (A * (x + h) ** p + B) * y6w

        # 5th order solution (also stage 7 location, FSAL)
        y7w = w + h * ((35.0 / 384.0) * k1w + (500.0 / 1113.0) * k3w
                       + (125.0 / 192.0) * k4w - (2187.0 / 6784.0) * k5w
                       + (11.0 / 84.0) * k6w)
        y7d = dw + h * ((35.0 / 384.0) * k1d + (500.0 / 1113.0) * k3d
                        + (125.0 / 192.0) * k4d - (2187.0 / 6784.0) * k5d
                        + (11.0 / 84.0) * k6d)
        k7w = y7d
        k7d = (A * (x + h) ** p + B) * y7w

        errw = h * ((71.0 / 57600.0) * k1w - (71.0 / 16695.0) * k3w
                    + (71.0 / 1920.0) * k4w - (17253.0 / 339200.0) * k5w
                    + (22.0 / 525.0) * k6w - (1.0 / 40.0) * k7w)
        errd = h * ((71.0 / 57600.0) * k1d - (71.0 / 16695.0) * k3d
                    + (71.0 / 1920.0) * k4d - (17253.0 / 339200.0) * k5d
                    + (22.0 / 525.0) * k6d - (1.0 / 40.0) * k7d)

        finite = (math.isfinite(y7w.real) and math.isfinite(y7w.imag)
                  and math.isfinite(y7d.real) and math.isfinite(y7d.imag)
                  and math.isfinite(errw.real) and math.isfinite(errw.imag)
                  and math.isfinite(errd.real) and math.isfinite(errd.imag))
        if finite:
            sw = atol + rtol * max(abs(w), abs(y7w))
            sd = atol + rtol * max(abs(dw), abs(y7d))
            err = math.sqrt(0.5 * ((abs(errw) / sw) ** 2 + (abs(errd) / sd) ** 2))
        else:
            err = -1.0  # sentinel: reject hard

        if finite and err <= 1.0:
            x = x_to if last else x + h
            w = y7w
            dw = y7d
            k1w = k7w
            k1d = k7d
            m = max(abs(w), abs(dw))
            if m > rescale_threshold:
                w /= m
                dw /= m
                k1w /= m
                k1d /= m
                ls += math.log(m)
            if ntrace < cap:
                trace_x[ntrace] = x
                trace_logw[ntrace] = math.log(abs(w) + 1e-300) + ls
                ntrace += 1
            if last:
                break
            if err > 0.0:
                fac = 0.9 * err ** -0.2
                if fac > 5.0:
                    fac = 5.0
                h *= fac
            else:
                h *= 5.0
        else:
            if finite and err > 0.0:
                fac = 0.9 * err ** -0.2
                if fac < 0.2:
                    fac = 0.2
                h *= fac
            else:
                h *= 0.2
            if abs(h) < 1e-14 * max(1.0, abs(x)):
                status = STATUS_NON_FINITE
                break

    return w, dw, ls, steps, status, ntrace


@_jit
def march_budget(A, B, p, x_lo, target, x_hi, dx):
    """Smallest x in [x_lo, x_hi] with integral of Re sqrt(q) from x_lo
    reaching ``target``; returns (x, capped).

    Simpson accumulation on fixed panels; the integrand is smooth and
    nonnegative (principal square root), and only ~1% accuracy is needed.
    """
    total = 0.0
    x = x_lo
    g0 = cmath.sqrt(A * x ** p + B).real
    while x < x_hi:
        x1 = x + dx
        if x1 > x_hi:
            x1 = x_hi
        xm = 0.5 * (x + x1)
        gm = cmath.sqrt(A * xm ** p + B).real
        g1 = cmath.sqrt(A * x1 ** p + B).real
        seg = (g0 + 4.0 * gm + g1) * (x1 - x) / 6.0
        if seg > 0.0 and total + seg >= target:
            frac = (target - total) / seg
            if frac < 0.0:
                frac = 0.0
            return x + frac * (x1 - x), False
        total += seg
        x = x1
        g0 = g1
    return x_hi, True
