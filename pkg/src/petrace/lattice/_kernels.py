"""Hot loops for lattice sums, with numba and pure-numpy implementations.

The backend is chosen per call: an explicit ``backend`` argument wins,
otherwise PETRACE_DISABLE_NUMBA=1 forces numpy, otherwise numba is used
when importable.  Both backends run the same algorithm in the same
summation order; results agree to rounding.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import PreconditionError

ENV_FLAG = "PETRACE_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - depends on the environment
    numba = None


def numba_available() -> bool:
    return numba is not None


def resolve_backend(backend: str | None = None) -> str:
    if backend is None or backend == "auto":
        if os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on"):
            return "numpy"
        return "numba" if numba is not None else "numpy"
    if backend not in ("numba", "numpy"):
        raise PreconditionError(f"unknown backend {backend!r}")
    if backend == "numba" and numba is None:
        raise PreconditionError("numba is not installed")
    return backend


# ----------------------------------------------------------------------
# numpy

def _inverse_weights_np(omega: np.ndarray, s: float) -> np.ndarray:
    """y = 1 / (omega^2 |omega|^(2s))."""
    return omega ** -2 * (omega.real ** 2 + omega.imag ** 2) ** (-s)


def power_sums_np(omega: np.ndarray, s: float, jmax: int) -> np.ndarray:
    y = _inverse_weights_np(omega, s)
    out = np.zeros(jmax, dtype=np.complex128)
    p = np.ones_like(y)
    for j in range(jmax):
        p = p * y
        out[j] = np.cumsum(p)[-1] if p.size else 0.0
    return out


def distinct_tuple_sums_np(omega: np.ndarray, s: float, kmax: int) -> np.ndarray:
    """e_1..e_kmax of y over index tuples i1 < i2 < ... (kmax <= 3)."""
    y = _inverse_weights_np(omega, s)
    n = y.size
    out = np.zeros(kmax, dtype=np.complex128)
    # tail[i] = sum_{l >= i} y_l, tail[n] = 0
    tail = np.zeros(n + 1, dtype=np.complex128)
    tail[:n] = np.cumsum(y[::-1])[::-1]
    out[0] = tail[0]
    if kmax >= 2:
        out[1] = np.cumsum(y * tail[1:])[-1] if n else 0.0
    if kmax >= 3:
        # e_3 = sum_{i<j} y_i y_j tail[j+1]
        pair_tail = y * tail[1:]                     # indexed by j
        acc = 0.0 + 0.0j
        for i in range(n - 1):
            acc += y[i] * np.cumsum(pair_tail[i + 1:])[-1]
        out[2] = acc
    return out


# ----------------------------------------------------------------------
# numba

if numba is not None:

    @numba.njit(cache=True)
    def _power_sums_nb(omega, s, jmax):
        out = np.zeros(jmax, dtype=np.complex128)
        for idx in range(omega.size):
            w = omega[idx]
            y = 1.0 / (w * w) * (w.real * w.real + w.imag * w.imag) ** (-s)
            p = 1.0 + 0.0j
            for j in range(jmax):
                p *= y
                out[j] += p
        return out

    @numba.njit(cache=True)
    def _distinct_tuple_sums_nb(omega, s, kmax):
        n = omega.size
        y = np.empty(n, dtype=np.complex128)
        for i in range(n):
            w = omega[i]
            y[i] = 1.0 / (w * w) * (w.real * w.real + w.imag * w.imag) ** (-s)
        tail = np.zeros(n + 1, dtype=np.complex128)
        for i in range(n - 1, -1, -1):
            tail[i] = tail[i + 1] + y[i]
        out = np.zeros(kmax, dtype=np.complex128)
        out[0] = tail[0]
        if kmax >= 2:
            acc = 0.0 + 0.0j
            for i in range(n):
                acc += y[i] * tail[i + 1]
            out[1] = acc
        if kmax >= 3:
            acc = 0.0 + 0.0j
            for i in range(n - 1):
                inner = 0.0 + 0.0j
                for j in range(i + 1, n):
                    inner += y[j] * tail[j + 1]
                acc += y[i] * inner
            out[2] = acc
        return out


def power_sums(omega: np.ndarray, s: float, jmax: int, backend: str | None = None) -> np.ndarray:
    """[sum_w y^j for j = 1..jmax] with y = 1/(omega^2 |omega|^(2s)), in the given order."""
    omega = np.ascontiguousarray(omega, dtype=np.complex128)
    if resolve_backend(backend) == "numba":
        return _power_sums_nb(omega, float(s), int(jmax))
    return power_sums_np(omega, float(s), int(jmax))


def distinct_tuple_sums(omega: np.ndarray, s: float, kmax: int,
                        backend: str | None = None) -> np.ndarray:
    """Elementary symmetric sums e_1..e_kmax of the y's, summed over distinct index tuples."""
    if not 1 <= kmax <= 3:
        raise PreconditionError("distinct-tuple summation is implemented for k <= 3")
    omega = np.ascontiguousarray(omega, dtype=np.complex128)
    if resolve_backend(backend) == "numba":
        return _distinct_tuple_sums_nb(omega, float(s), int(kmax))
    return distinct_tuple_sums_np(omega, float(s), int(kmax))
