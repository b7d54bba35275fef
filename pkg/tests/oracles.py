"""Independent oracles used by the test suite.

Everything here deliberately avoids the production code paths: matrix
elements are integrated numerically on a 2D Cartesian grid instead of by
Gauss-Laguerre quadrature, density matrices are built by explicit operator
application instead of ladder contractions, and basis rotations are expanded
multinomially.  Agreement between these and the fast implementations is the
core of the oracle suite.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np
from scipy.special import eval_genlaguerre


# ---------------------------------------------------------------------------
# real-space mode functions and grid integrals

def mode_function(n: int, m: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """phi_{n,m}(x, y), complex, unit L2 norm over the plane."""
    r2 = x * x + y * y
    am = abs(m)
    norm = math.sqrt(math.factorial(n) / (math.pi * math.factorial(n + am)))
    rad = norm * r2 ** (am / 2.0) * eval_genlaguerre(n, am, r2) * np.exp(-r2 / 2.0)
    return rad * np.exp(1j * m * np.arctan2(y, x))


@lru_cache(maxsize=8)
def _grid(extent: float, step: float):
    ax = np.arange(-extent, extent + step / 2, step)
    x, y = np.meshgrid(ax, ax, indexing="ij")
    return x, y, step * step


def grid_interaction(k, l, p, q, extent: float = 8.0, step: float = 0.05) -> float:
    """Brute-force 2D integral of conj(phi_k phi_l) phi_p phi_q."""
    x, y, da = _grid(extent, step)
    f = (np.conj(mode_function(k.n, k.m, x, y) * mode_function(l.n, l.m, x, y))
         * mode_function(p.n, p.m, x, y) * mode_function(q.n, q.m, x, y))
    val = f.sum() * da
    assert abs(val.imag) < 1e-10
    return float(val.real)


def grid_quadrupole(k, p, extent: float = 8.0, step: float = 0.05) -> float:
    """Brute-force 2D integral of conj(phi_p) (x^2 - y^2) phi_k."""
    x, y, da = _grid(extent, step)
    f = np.conj(mode_function(p.n, p.m, x, y)) * (x * x - y * y) \
        * mode_function(k.n, k.m, x, y)
    val = f.sum() * da
    assert abs(val.imag) < 1e-10
    return float(val.real)


# ---------------------------------------------------------------------------
# counting

def partition_count(total: int, max_parts: int) -> int:
    """Number of partitions of `total` into at most `max_parts` positive parts.

    By conjugation this equals the number of partitions with largest part
    <= max_parts, which the coin DP below counts.
    """
    if total == 0:
        return 1
    dp = [1] + [0] * total
    for part in range(1, min(max_parts, total) + 1):
        for t in range(part, total + 1):
            dp[t] += dp[t - part]
    return dp[total]


# ---------------------------------------------------------------------------
# explicit operator application

def brute_spdm(state: np.ndarray, basis) -> np.ndarray:
    """<a+_k a_l> by direct application of the operators to the expansion."""
    nm = len(basis.modes)
    rho = np.zeros((nm, nm))
    occm = basis.occupations
    for s in range(basis.dimension):
        amp = state[s]
        if amp == 0.0:
            continue
        occ = occm[s]
        for l in range(nm):
            if occ[l] == 0:
                continue
            for k in range(nm):
                t = occ.astype(np.int64).copy()
                t[l] -= 1
                factor = math.sqrt(int(occ[l]) * (t[k] + 1))
                t[k] += 1
                try:
                    idx = basis.index_of(t)
                except KeyError:
                    continue  # target leaves the truncated basis
                rho[k, l] += state[idx] * factor * amp
    return rho


def rotated_amplitudes(state: np.ndarray, basis, u: np.ndarray) -> dict:
    """Exact multinomial expansion of the state in rotated modes.

    New mode j is sum_k u[k, j] phi_k, so each old creation operator expands
    as a+_k = sum_j u[k, j] b+_j.  Returns {new occupation tuple: amplitude}.
    Cost grows as (n_modes)^N; fine for N <= 3.
    """
    nm = len(basis.modes)
    out: dict[tuple, float] = {}
    occm = basis.occupations
    for s in range(basis.dimension):
        amp = float(state[s])
        if amp == 0.0:
            continue
        occ = occm[s]
        # one factor of a+_k per particle, k repeated occ[k] times
        particle_modes = [k for k in range(nm) for _ in range(int(occ[k]))]
        norm = amp / math.sqrt(np.prod([math.factorial(int(c)) for c in occ]))
        for choice in itertools.product(range(nm), repeat=len(particle_modes)):
            coeff = norm
            for k, j in zip(particle_modes, choice):
                coeff *= u[k, j]
            new_occ = [0] * nm
            for j in choice:
                new_occ[j] += 1
            key = tuple(new_occ)
            # b+ product on vacuum carries sqrt(occ!)
            coeff *= math.sqrt(np.prod([math.factorial(c) for c in new_occ]))
            out[key] = out.get(key, 0.0) + coeff
    return {k: v for k, v in out.items() if abs(v) > 1e-14}


def variance_in_rotated_mode(state: np.ndarray, basis, u: np.ndarray) -> float:
    """var(n_1) with n_1 counting bosons in the first column of u."""
    amps = rotated_amplitudes(state, basis, u)
    mean = sum(v * v * occ[0] for occ, v in amps.items())
    second = sum(v * v * occ[0] ** 2 for occ, v in amps.items())
    return second - mean * mean


def lorentzian(f_peak: float, omega_c: float, gamma: float):
    """Synthetic F_Q(omega) profile with known left half-width gamma."""
    def f(omega: float) -> float:
        return f_peak / (1.0 + ((omega - omega_c) / gamma) ** 2)
    return f


def lowered_dict(state: np.ndarray, basis, mode_seq) -> dict:
    """Apply annihilators a_{mode_seq[0]}, a_{mode_seq[1]}, ... in order.

    Returns the resulting (N - len(mode_seq))-boson state as a sparse
    occupation->amplitude dict, independent of any production indexing.
    """
    cur = {}
    for s in range(basis.dimension):
        if state[s] != 0.0:
            cur[tuple(int(x) for x in basis.occupations[s])] = float(state[s])
    for mode in mode_seq:
        nxt: dict = {}
        for occ, amp in cur.items():
            if occ[mode] == 0:
                continue
            t = list(occ)
            t[mode] -= 1
            key = tuple(t)
            nxt[key] = nxt.get(key, 0.0) + amp * math.sqrt(occ[mode])
        cur = nxt
    return cur


def dict_dot(a: dict, b: dict) -> float:
    return sum(v * b.get(k, 0.0) for k, v in a.items())
