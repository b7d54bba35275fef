"""Single- and two-body matrix elements of the trapped-mode basis.

The mode wavefunction is ``phi_{n,m}(r, theta) = R_{n,|m|}(r) e^{i m theta}``
with the radial part normalized so that ``integral_0^inf R^2 r dr = 1/(2 pi)``
(unit 2D norm).  Explicitly, in trap units,

    R_{n,|m|}(r) = sqrt(n! / (pi (n+|m|)!)) r^{|m|} L_n^{|m|}(r^2) e^{-r^2/2}.

Two kinds of elements are needed:

* contact interaction, the coefficient multiplying g in trap units,

      I(k, l -> p, q) = integral phi_k* phi_l* phi_p phi_q d^2r
                      = 2 pi delta(m_k + m_l, m_p + m_q)
                        integral R_k R_l R_p R_q r dr,

* quadrupole anisotropy ``<p| x^2 - y^2 |k>``, nonzero only for
  ``m_p = m_k +- 2``, equal to ``pi integral R_p R_k r^3 dr``.

All radial integrals reduce to polynomials times a Gaussian and are done
exactly by Gauss-Laguerre quadrature with order (polynomial degree)/2 + 2.
Elements below 1e-14 in magnitude are dropped and read back as exact zeros.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy.special import eval_genlaguerre

from .basis import SpMode

ZERO_THRESHOLD = 1e-14


def _radial_norm(n: int, am: int) -> float:
    # makes integral R^2 r dr = 1/(2 pi)
    return math.sqrt(math.factorial(n) / (math.pi * math.factorial(n + am)))


def radial_wavefunction(mode: SpMode, r) -> np.ndarray:
    """Radial factor R_{n,|m|}(r); vectorized over ``r``."""
    r = np.asarray(r, dtype=float)
    am = abs(mode.m)
    return (
        _radial_norm(mode.n, am)
        * r**am
        * eval_genlaguerre(mode.n, am, r**2)
        * np.exp(-(r**2) / 2.0)
    )


@lru_cache(maxsize=128)
def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    return laggauss(order)


def _quad_order(degree: int) -> int:
    return degree // 2 + 2


def interaction_element(k: SpMode, l: SpMode, p: SpMode, q: SpMode) -> float:
    """Contact two-body integral I(k, l -> p, q); zero unless m is conserved."""
    if k.m + l.m != p.m + q.m:
        return 0.0
    modes = (k, l, p, q)
    # integrand in t = 2 r^2: prod_i N_i (t/2)^{|m_i|/2} L_{n_i}^{|m_i|}(t/2),
    # polynomial of degree sum |m_i|/2 + sum n_i
    degree = sum(abs(md.m) for md in modes) // 2 + sum(md.n for md in modes)
    t, w = _gl_nodes(_quad_order(degree))
    u = t / 2.0
    prod = np.ones_like(t)
    for md in modes:
        am = abs(md.m)
        prod = prod * (_radial_norm(md.n, am) * u ** (am / 2.0)
                       * eval_genlaguerre(md.n, am, u))
    val = (math.pi / 2.0) * float(w @ prod)
    return val if abs(val) >= ZERO_THRESHOLD else 0.0


def lll_interaction_element(k: SpMode, l: SpMode, p: SpMode, q: SpMode) -> float:
    """Closed form for four lowest-Landau-level modes (all n = 0, m >= 0)."""
    for md in (k, l, p, q):
        if md.n != 0 or md.m < 0:
            raise ValueError(f"mode {md} is not in the lowest Landau level")
    if k.m + l.m != p.m + q.m:
        return 0.0
    mt = k.m + l.m
    denom = math.sqrt(
        math.factorial(k.m) * math.factorial(l.m)
        * math.factorial(p.m) * math.factorial(q.m)
    )
    return math.factorial(mt) / (2.0 * math.pi * 2.0**mt * denom)


def anisotropy_element(k: SpMode, p: SpMode) -> float:
    """Quadrupole element <p| x^2 - y^2 |k>; zero unless m_p = m_k +- 2."""
    if abs(p.m - k.m) != 2:
        return 0.0
    amk, amp = abs(k.m), abs(p.m)
    degree = (amk + amp) // 2 + 1 + k.n + p.n
    t, w = _gl_nodes(_quad_order(degree))
    vals = (
        _radial_norm(k.n, amk) * _radial_norm(p.n, amp)
        * t ** ((amk + amp) // 2 + 1)
        * eval_genlaguerre(k.n, amk, t)
        * eval_genlaguerre(p.n, amp, t)
    )
    val = (math.pi / 2.0) * float(w @ vals)
    return val if abs(val) >= ZERO_THRESHOLD else 0.0


def _canonical_pair(a: SpMode, b: SpMode) -> tuple[SpMode, SpMode]:
    return (a, b) if (a.n, a.m) <= (b.n, b.m) else (b, a)


def _canonical_quad(k, l, p, q):
    left = _canonical_pair(k, l)
    right = _canonical_pair(p, q)
    lk = ((left[0].n, left[0].m), (left[1].n, left[1].m))
    rk = ((right[0].n, right[0].m), (right[1].n, right[1].m))
    return left + right if lk <= rk else right + left


@dataclass
class InteractionTable:
    """Symmetrized contact-interaction coefficients over a mode set.

    ``entries`` maps canonical quadruples (pair members sorted, pairs
    sorted) to the raw integral I; ``element`` resolves any ordering.
    ``pair_groups`` caches, per conserved pair angular momentum, the list
    of mode-index pairs and their dense coefficient matrix, which is the
    layout the Hamiltonian assembly consumes.
    """

    modes: tuple[SpMode, ...]
    entries: dict[tuple, float]
    pair_groups: dict[int, dict]
    n_ll: int
    m_min: int
    m_max: int

    def element(self, k: SpMode, l: SpMode, p: SpMode, q: SpMode) -> float:
        if k.m + l.m != p.m + q.m:
            return 0.0
        return self.entries.get(_canonical_quad(k, l, p, q), 0.0)


@dataclass
class AnisotropyTable:
    """Quadrupole coefficients <p| x^2 - y^2 |k> over a mode set."""

    modes: tuple[SpMode, ...]
    entries: dict[tuple[SpMode, SpMode], float]

    def element(self, k: SpMode, p: SpMode) -> float:
        return self.entries.get(_canonical_pair(k, p), 0.0)


def build_tables(modes: list[SpMode]) -> tuple[InteractionTable, AnisotropyTable]:
    """Precompute all interaction and anisotropy coefficients for ``modes``.

    Interaction quadruples are grouped by conserved total m and evaluated on
    one shared Gauss-Laguerre rule whose order covers the largest polynomial
    degree in the set, so every value is still quadrature-exact.
    """
    modes = list(modes)
    n_modes = len(modes)
    lls = [md.ll for md in modes]

    pairs_by_mtot: dict[int, list[tuple[int, int]]] = {}
    for i in range(n_modes):
        for j in range(i, n_modes):
            pairs_by_mtot.setdefault(modes[i].m + modes[j].m, []).append((i, j))

    max_degree = 0
    for group in pairs_by_mtot.values():
        degs = [
            (abs(modes[i].m) + abs(modes[j].m)) // 2 + modes[i].n + modes[j].n
            for i, j in group
        ]
        # degree of a quadruple is additive over its two pairs and the
        # pair-with-itself combination dominates
        max_degree = max(max_degree, 2 * max(degs) + 1)
    t, w = _gl_nodes(_quad_order(max_degree))
    u = t / 2.0
    sw = np.sqrt(w)

    # per-mode factor on the nodes: N (t/2)^{|m|/2} L_n^{|m|}(t/2)
    g = np.empty((n_modes, t.size))
    for a, md in enumerate(modes):
        am = abs(md.m)
        g[a] = (_radial_norm(md.n, am) * u ** (am / 2.0)
                * eval_genlaguerre(md.n, am, u))

    entries: dict[tuple, float] = {}
    pair_groups: dict[int, dict] = {}
    for mtot, group in sorted(pairs_by_mtot.items()):
        h = np.empty((len(group), t.size))
        for row, (i, j) in enumerate(group):
            h[row] = g[i] * g[j] * sw
        values = (math.pi / 2.0) * (h @ h.T)
        values[np.abs(values) < ZERO_THRESHOLD] = 0.0
        pair_groups[mtot] = {
            "pairs": np.array(group, dtype=np.int64),
            "pair_index": {pr: row for row, pr in enumerate(group)},
            "ll_sums": np.array([lls[i] + lls[j] for i, j in group], dtype=np.int64),
            "values": values,
        }
        for a in range(len(group)):
            i, j = group[a]
            for b in range(a, len(group)):
                pp, qq = group[b]
                if values[a, b] != 0.0:
                    key = _canonical_quad(modes[i], modes[j], modes[pp], modes[qq])
                    entries[key] = float(values[a, b])

    aniso: dict[tuple[SpMode, SpMode], float] = {}
    for a in range(n_modes):
        for b in range(a, n_modes):
            val = anisotropy_element(modes[a], modes[b])
            if val != 0.0:
                aniso[_canonical_pair(modes[a], modes[b])] = val

    itab = InteractionTable(
        modes=tuple(modes),
        entries=entries,
        pair_groups=pair_groups,
        n_ll=max(lls) + 1,
        m_min=min(md.m for md in modes),
        m_max=max(md.m for md in modes),
    )
    return itab, AnisotropyTable(modes=tuple(modes), entries=aniso)


def dump_interaction_csv(table: InteractionTable, path: str) -> None:
    """Audit dump of the interaction table, one canonical quadruple per row."""
    with open(path, "w") as fh:
        fh.write("n_k,m_k,n_l,m_l,n_p,m_p,n_q,m_q,value\n")
        for key in sorted(table.entries,
                          key=lambda ms: [(md.n, md.m) for md in ms]):
            k, l, p, q = key
            fh.write(
                f"{k.n},{k.m},{l.n},{l.m},{p.n},{p.m},{q.n},{q.m},"
                f"{table.entries[key]:.17g}\n"
            )
