"""Pell apparatus for region edges.

Edge values J of a Markov region R satisfy K^2 - D(R)*J^2 = -(2R)^2 with
D(R) = (3R)^2 - 4.  This module provides the residual, an exhaustive
brute-force solution search (the independent oracle), solution generation
from the half-integer fundamental unit, and the two-smallest-solutions
uniqueness check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import BoundTooSmall, NonIntegralStep
from .lucas import seq_u, seq_v
from .tree import MarkovList, Triplet

# simple wheel for the plain loop: squares mod 2520 = 8*9*5*7
_WHEEL = 2520
_SQ_WHEEL = frozenset(k * k % _WHEEL for k in range(_WHEEL))

_LOOP_LIMIT = 2_000_000  # larger bounds switch to the sieved search


def discriminant(r: int) -> int:
    if r < 1:
        raise ValueError("region parameter must be >= 1")
    return (3 * r) ** 2 - 4


def pell_residual(k: int, j: int, r: int) -> int:
    return k * k - discriminant(r) * j * j


@dataclass(frozen=True)
class PellSolution:
    k: int
    j: int
    r: int

    def residual(self) -> int:
        return pell_residual(self.k, self.j, self.r)


def _is_square(v: int) -> bool:
    if v < 0:
        return False
    s = isqrt(v)
    return s * s == v


def solve_pell_brute(r: int, j_bound: int) -> list[int]:
    """All J in [1, j_bound] with D(R)*J^2 - (2R)^2 a perfect square, ascending.

    Exhaustive by construction: the modular wheels only discard J whose
    value is a quadratic non-residue for some modulus, which can never be
    a square; every surviving candidate gets an exact integer-sqrt check.
    """
    if j_bound < 1:
        raise ValueError("j_bound must be >= 1")
    if j_bound <= _LOOP_LIMIT:
        return _brute_loop(r, j_bound)
    return _brute_sieve(r, j_bound)


def _brute_loop(r: int, bound: int) -> list[int]:
    d = discriminant(r)
    c = 4 * r * r
    allowed = bytearray(_WHEEL)
    for j in range(_WHEEL):
        allowed[j] = (d * j * j - c) % _WHEEL in _SQ_WHEEL
    out = []
    for j in range(1, bound + 1):
        if allowed[j % _WHEEL] and _is_square(d * j * j - c):
            out.append(j)
    return out


def _allowed_mod(m: int, d: int, c: int):
    """Boolean numpy table: j -> (d*j^2 - c) mod m is a square residue mod m.

    Built in chunks with reductions between products so intermediates stay
    inside int64 for moduli up to ~3e9.
    """
    import numpy as np

    sq = np.zeros(m, dtype=bool)
    allowed = np.empty(m, dtype=bool)
    dm, cm = d % m, c % m
    step = 1 << 20
    for lo in range(0, m, step):
        ks = np.arange(lo, min(lo + step, m), dtype=np.int64)
        sq[(ks * ks) % m] = True
    for lo in range(0, m, step):
        ks = np.arange(lo, min(lo + step, m), dtype=np.int64)
        vals = (dm * ((ks * ks) % m) - cm) % m
        allowed[lo:lo + len(ks)] = sq[vals]
    return allowed


def _crt_residues(factors, d: int, c: int):
    """Sorted residues mod prod(factors) passing every factor's square test."""
    import numpy as np

    mod = 1
    res = np.zeros(1, dtype=np.int64)
    for m in factors:
        allowed = _allowed_mod(m, d, c)
        grid = (res[:, None] + mod * np.arange(m, dtype=np.int64)[None, :]).ravel()
        res = grid[allowed[grid % m]]
        mod *= m
    res.sort()
    return res, mod


def _products(groups):
    out = []
    for group in groups:
        q = 1
        for p in group:
            q *= p
        out.append(q)
    return out


def _scan_kernel():
    """Compiled block scanner: shift-test against the first table, then
    divide-test survivors against the remaining three.  Returns -1 if the
    output buffer would overflow (caller re-scans the block exactly)."""
    import numba
    import numpy as np

    @numba.njit(cache=True)
    def scan(res32, resmod1, s1, q1, tbl1, q2, tbl2, q3, tbl3, q4, tbl4,
             base, out):  # pragma: no cover - compiled
        n = 0
        cap = out.shape[0]
        for i in range(res32.shape[0]):
            idx = resmod1[i] + s1
            if idx >= q1:
                idx -= q1
            if tbl1[idx] == 0:
                continue
            v = np.int64(res32[i]) + base
            if tbl2[v % q2] == 0:
                continue
            if tbl3[v % q3] == 0:
                continue
            if tbl4[v % q4] == 0:
                continue
            if n >= cap:
                return -1
            out[n] = v
            n += 1
        return n

    return scan


_KERNEL = None


def _get_kernel():
    global _KERNEL
    if _KERNEL is None:
        try:
            _KERNEL = _scan_kernel()
        except ImportError:
            _KERNEL = False
    return _KERNEL


def _brute_sieve(r: int, bound: int) -> list[int]:
    import numpy as np

    d = discriminant(r)
    c = 4 * r * r
    if bound <= 10 ** 9:
        return _sieve_numpy(r, bound, (64, 9, 5, 7, 11, 13),
                            ((17, 19, 23), (29, 31, 37, 41)))
    kernel = _get_kernel()
    if not kernel:
        return _sieve_numpy(r, bound, (64, 9, 5, 7, 11, 13, 17, 19),
                            ((23, 29, 31, 37), (41, 43, 47, 53)))
    wheel = (64, 9, 5, 7, 11, 13, 17, 19)
    q1, q2, q3, q4 = _products(((23, 29, 31, 37), (41, 43, 47, 53),
                                (59, 61, 67, 71), (73, 79, 83, 89)))
    tbls = [_allowed_mod(q, d, c).view(np.uint8)
            for q in (q1, q2, q3, q4)]
    res, m1 = _crt_residues(wheel, d, c)
    res32 = res.astype(np.int32)
    resmod1 = (res % q1).astype(np.int32)
    del res
    buf = np.empty(1 << 21, dtype=np.int64)
    out = []
    for b in range(bound // m1 + 1):
        base = b * m1
        n = kernel(res32, resmod1, base % q1, q1, tbls[0], q2, tbls[1],
                   q3, tbls[2], q4, tbls[3], base, buf)
        if n < 0:
            # buffer overflow (dense tables); check the block exactly
            for j in (res32.astype(np.int64) + base).tolist():
                if 1 <= j <= bound and _is_square(d * j * j - c):
                    out.append(j)
            continue
        for j in buf[:n].tolist():
            if 1 <= j <= bound and _is_square(d * j * j - c):
                out.append(j)
    return out


def _sieve_numpy(r: int, bound: int, wheel, groups) -> list[int]:
    import numpy as np

    d = discriminant(r)
    c = 4 * r * r
    res, m1 = _crt_residues(wheel, d, c)
    # per group: bool table mod q plus the fixed residues of the wheel
    # entries, so each block needs only a scalar shift and a wrap
    tables = []
    for q in _products(groups):
        tbl = _allowed_mod(q, d, c)
        tables.append((q, tbl, (res % q).astype(np.int32)))
    out = []
    for b in range(bound // m1 + 1):
        base = b * m1
        mask = None
        for q, tbl, resmod in tables:
            idx = resmod + (base % q)
            idx[idx >= q] -= q
            hit = tbl[idx]
            mask = hit if mask is None else (mask & hit)
        js = res[mask] + base
        if base + m1 > bound:
            js = js[js <= bound]
        for j in js.tolist():
            if j >= 1 and _is_square(d * j * j - c):
                out.append(j)
    return out


def generate_solutions(head: Triplet, m_count: int) -> list[PellSolution]:
    """First m_count solutions grown from the edge baseline by the
    half-integer unit (3R/2, 1/2); every halving is checked exact."""
    if m_count < 1:
        raise ValueError("m_count must be >= 1")
    x, r, z = head.members
    d = discriminant(r)
    kx, jy = seq_v(x, r, z, 1), seq_u(x, r, z, 1)
    out = [PellSolution(kx, jy, r)]
    p = 3 * r
    for _ in range(m_count - 1):
        nk = p * kx + d * jy
        nj = kx + p * jy
        if nk % 2 or nj % 2:
            raise NonIntegralStep(f"half-unit step left a remainder at {head}")
        kx, jy = nk // 2, nj // 2
        out.append(PellSolution(kx, jy, r))
    return out


@dataclass(frozen=True)
class UniquenessReport:
    region: int
    triplet: Triplet
    bound: int
    solutions: tuple[int, ...]
    expected: tuple[int, int]
    ok: bool

    @property
    def verdict(self) -> str:
        return "OK" if self.ok else "MISMATCH"


def uniqueness_check(r: int, mlist: MarkovList, j_bound=None) -> UniquenessReport:
    """Verify the two smallest brute-force J values are exactly {x, z}."""
    triplet = mlist.triplet_for(r)
    if j_bound is None:
        j_bound = 2 * max(triplet.x, triplet.z)
    found = solve_pell_brute(r, j_bound)
    if len(found) < 2:
        raise BoundTooSmall(
            f"bound {j_bound} produced {len(found)} solution(s) for region {r}"
        )
    expected = (min(triplet.x, triplet.z), max(triplet.x, triplet.z))
    ok = tuple(found[:2]) == expected
    return UniquenessReport(r, triplet, j_bound, tuple(found), expected, ok)
