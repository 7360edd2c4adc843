"""Lucas sequences U_k(3R,1), V_k(3R,1) and their shifted combinations.

Everything is exact integer arithmetic, valid for any integer index k.
Negative indices use the reflections U_{-k} = -U_k and V_{-k} = V_k.
The linear recurrence is the reference implementation; a fast-doubling
variant is provided for huge indices (exact and modular) and is
cross-checked against the linear one in the test suite.
"""

from __future__ import annotations

from .errors import ResourceLimit

DEFAULT_MAX_DIGITS = 10 ** 6


def _guard(r: int, k: int, max_digits) -> None:
    # U_k has roughly |k|*log10(3R) digits; bit_length over-estimates log2,
    # so this never under-counts.
    if max_digits is None:
        return
    est = (abs(k) * (3 * r).bit_length() * 30103) // 100000 + 1
    if est > max_digits:
        raise ResourceLimit(
            f"index {k} with parameter {r} exceeds the {max_digits}-digit budget"
        )


def lucas_u(r: int, k: int, max_digits=DEFAULT_MAX_DIGITS) -> int:
    """U_k(3R,1): U_0 = 0, U_1 = 1, U_{k+1} = 3R*U_k - U_{k-1}."""
    if k < 0:
        return -lucas_u(r, -k, max_digits)
    _guard(r, k, max_digits)
    p = 3 * r
    a, b = 0, 1
    for _ in range(k):
        a, b = b, p * b - a
    return a


def lucas_v(r: int, k: int, max_digits=DEFAULT_MAX_DIGITS) -> int:
    """V_k(3R,1): V_0 = 2, V_1 = 3R, V_{k+1} = 3R*V_k - V_{k-1}."""
    k = abs(k)
    _guard(r, k, max_digits)
    p = 3 * r
    a, b = 2, p
    for _ in range(k):
        a, b = b, p * b - a
    return a


def u_pair(r: int, k: int, max_digits=DEFAULT_MAX_DIGITS) -> tuple[int, int]:
    """(U_{k-1}, U_k) for any integer k."""
    if k >= 0:
        _guard(r, k, max_digits)
        p = 3 * r
        a, b = -1, 0  # U_{-1}, U_0
        for _ in range(k):
            a, b = b, p * b - a
        return a, b
    j = -k
    a, b = u_pair(r, j + 1, max_digits)  # U_j, U_{j+1}
    return -b, -a  # U_{k-1} = -U_{j+1}, U_k = -U_j


def v_pair(r: int, k: int, max_digits=DEFAULT_MAX_DIGITS) -> tuple[int, int]:
    """(V_{k-1}, V_k) for any integer k."""
    if k >= 0:
        _guard(r, k, max_digits)
        p = 3 * r
        a, b = p, 2  # V_{-1}, V_0
        for _ in range(k):
            a, b = b, p * b - a
        return a, b
    j = -k
    a, b = v_pair(r, j + 1, max_digits)
    return b, a  # V is even in k


def seq_u(a: int, r: int, b: int, n: int, max_digits=DEFAULT_MAX_DIGITS) -> int:
    """Shifted combination b*U_n - a*U_{n-1}; equals a at n=0 and b at n=1."""
    up, un = u_pair(r, n, max_digits)
    return b * un - a * up


def seq_v(x: int, r: int, z: int, n: int, max_digits=DEFAULT_MAX_DIGITS) -> int:
    """Companion combination z*V_n - x*V_{n-1}."""
    vp, vn = v_pair(r, n, max_digits)
    return z * vn - x * vp


def u_pair_fast(r: int, k: int, max_digits=DEFAULT_MAX_DIGITS) -> tuple[int, int]:
    """(U_k, U_{k+1}) by fast doubling; exact, any integer k."""
    if k < 0:
        a, b = u_pair_fast(r, -k - 1, max_digits)
        return -b, -a
    _guard(r, k + 1, max_digits)
    return _u_doubling(3 * r, k, None)


def u_pair_mod(p: int, k: int, m: int) -> tuple[int, int]:
    """(U_k, U_{k+1}) mod m for k >= 0, with kernel multiplier p = 3R mod m."""
    if k < 0:
        raise ValueError("modular pair requires k >= 0")
    return _u_doubling(p, k, m)


def _u_doubling(p: int, k: int, m) -> tuple[int, int]:
    # U_{2h} = U_h*(2*U_{h+1} - p*U_h), U_{2h+1} = U_{h+1}^2 - U_h^2 (Q = 1)
    if k == 0:
        return (0, 1 if m is None else 1 % m)
    a, b = _u_doubling(p, k >> 1, m)
    c = a * (2 * b - p * a)
    d = b * b - a * a
    if m is not None:
        c %= m
        d %= m
    if k & 1:
        e = p * d - c
        return (d, e if m is None else e % m)
    return (c, d)
