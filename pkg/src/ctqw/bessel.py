"""Integer-order Bessel functions of the first kind, J_n(z) for z >= 0.

Uses Miller's downward recurrence: start well above the largest order
requested, recur J_{n-1} = (2n/z) J_n - J_{n+1} down to 0 from trial
values, then rescale with the identity J_0 + 2 * sum_{k>=1} J_{2k} = 1.
Upward recurrence is unstable for n > z, downward is not.
"""

import math

import numpy as np

_OVERFLOW_LIMIT = 1e250
_RESCALE = 1e-250
_TINY = 1e-30
# Below this the series truncates exactly in double precision:
# J_0 = 1, J_1 = z/2, higher orders underflow.
_Z_TINY = 1e-290


def start_order(z: float, n_max: int) -> int:
    """First order of the downward recurrence for accurate J_0..J_{n_max}."""
    return max(n_max, math.ceil(z)) + 15 + math.ceil(10.0 * (z + 1.0) ** (1.0 / 3.0))


def bessel_row(z: float, n_max: int) -> np.ndarray:
    """J_0(z) .. J_{n_max}(z) for a single z >= 0.

    Negative orders are the caller's business via J_{-n} = (-1)^n J_n.
    """
    if z < 0:
        raise ValueError(f"argument must be nonnegative, got {z}")
    if int(n_max) != n_max or n_max < 0:
        raise ValueError(f"n_max must be a nonnegative integer, got {n_max}")
    out = np.zeros(n_max + 1)
    if z < _Z_TINY:
        out[0] = 1.0
        if n_max >= 1:
            out[1] = z / 2.0
        return out

    jnp1 = 0.0
    jn = _TINY
    even_sum = 0.0  # sum of trial J_n over even n >= 2
    for n in range(start_order(z, n_max), 0, -1):
        if n <= n_max:
            out[n] = jn
        if n % 2 == 0:
            even_sum += jn
        mult = 2.0 * n / z
        # rescale before the multiply can overflow
        while abs(jn) > _OVERFLOW_LIMIT / max(mult, 1.0):
            jn *= _RESCALE
            jnp1 *= _RESCALE
            even_sum *= _RESCALE
            out *= _RESCALE
        jnm1 = mult * jn - jnp1
        jnp1, jn = jn, jnm1
    out[0] = jn
    out /= jn + 2.0 * even_sum
    return out


def bessel_rows(z: np.ndarray, n_max: int) -> np.ndarray:
    """J_0..J_{n_max} for a batch of arguments; shape (n_max + 1, len(z)).

    Same recurrence as bessel_row, vectorized over z. All elements share
    the start order of the largest argument.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("arguments must be nonnegative")
    if int(n_max) != n_max or n_max < 0:
        raise ValueError(f"n_max must be a nonnegative integer, got {n_max}")
    out = np.zeros((n_max + 1, z.size))
    flat = z.ravel()
    tiny = flat < _Z_TINY
    zsafe = np.where(tiny, 1.0, flat)

    jnp1 = np.zeros(flat.size)
    jn = np.full(flat.size, _TINY)
    even_sum = np.zeros(flat.size)
    for n in range(start_order(float(flat.max(initial=0.0)), n_max), 0, -1):
        if n <= n_max:
            out[n] = jn
        if n % 2 == 0:
            even_sum += jn
        mult = 2.0 * n / zsafe
        while True:
            big = np.abs(jn) > _OVERFLOW_LIMIT / np.maximum(mult, 1.0)
            if not big.any():
                break
            jn[big] *= _RESCALE
            jnp1[big] *= _RESCALE
            even_sum[big] *= _RESCALE
            out[:, big] *= _RESCALE
        jnm1 = mult * jn - jnp1
        jnp1, jn = jn, jnm1
    out[0] = jn
    out /= jn + 2.0 * even_sum
    out[:, tiny] = 0.0
    out[0, tiny] = 1.0
    if n_max >= 1:
        out[1, tiny] = flat[tiny] / 2.0
    return out.reshape((n_max + 1,) + z.shape)
