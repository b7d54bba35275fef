"""Sparse many-body Hamiltonian assembly over a truncated Fock basis.

The rotating-frame Hamiltonian in trap units splits into parameter-free
pieces combined at matvec time,

    H(omega, g, A) = diag(h0) - omega * diag(lz) + g * V + A * W,

where ``h0`` holds the noninteracting energies ``2 sum n_i + sum |m_i| + N``,
``lz`` the total angular momentum per state, ``V`` the contact-interaction
matrix (coefficient of g) and ``W`` the bare quadrupole matrix ``x^2 - y^2``
(coefficient of A).  The trap potential behind these pieces is
``(1/2)(1 + 2A) x^2 + (1/2)(1 - 2A) y^2``, so A is the relative splitting of
the two trap frequencies squared.  The second-quantized interaction is

    (g/2) sum_{klpq} I(k,l->p,q) a+_k a+_l a_q a_p

with I the raw four-wavefunction integral from the tables, so two bosons in
one mode acquire pair energy ``g I(k,k->k,k)``.  V conserves L and is block
diagonal; W couples ``|dL| = 2`` blocks only.  Both matrices are stored CSR
and symmetrized exactly after assembly; the combined H is never materialized
except through :func:`combine_dense` for small systems.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .basis import FockBasis
from .errors import TableCoverageError
from .matelems import AnisotropyTable, InteractionTable, ZERO_THRESHOLD


@dataclass
class HamiltonianParts:
    """Parameter-independent pieces of H over a fixed basis."""

    basis: FockBasis
    h0: np.ndarray
    lz: np.ndarray
    v: sparse.csr_matrix
    w: sparse.csr_matrix

    @property
    def dimension(self) -> int:
        return self.h0.shape[0]

    def matvec(self, omega: float, g: float, a: float, x: np.ndarray) -> np.ndarray:
        return matvec(self, omega, g, a, x)

    def stats(self) -> dict:
        return {
            "dimension": self.dimension,
            "nnz_interaction": int(self.v.nnz),
            "nnz_anisotropy": int(self.w.nnz),
        }


def _check_coverage(basis: FockBasis, table_modes) -> None:
    missing = set(basis.modes) - set(table_modes)
    if missing:
        raise TableCoverageError(
            f"tables do not cover basis modes: {sorted((m.n, m.m) for m in missing)}"
        )


def assemble(basis: FockBasis,
             tables: tuple[InteractionTable, AnisotropyTable]) -> HamiltonianParts:
    """Build h0, lz, V and W for ``basis`` from precomputed tables."""
    itab, atab = tables
    _check_coverage(basis, itab.modes)
    _check_coverage(basis, atab.modes)

    modes = basis.modes
    n_modes = len(modes)
    occm = basis.occupations
    dim = occm.shape[0]
    m_arr = np.array([md.m for md in modes], dtype=np.int64)
    n_arr = np.array([md.n for md in modes], dtype=np.int64)
    ll_arr = np.array([md.ll for md in modes], dtype=np.int64)
    sp_energy = 2 * n_arr + np.abs(m_arr)

    occ64 = occm.astype(np.int64)
    h0 = (occ64 @ sp_energy + basis.spec.n).astype(float)
    lz = (occ64 @ m_arr).astype(float)

    # mode-index lookup into the table pair groups (tables may cover a
    # superset of the basis modes)
    tmode_index = {md: i for i, md in enumerate(itab.modes)}
    col_map = np.array([tmode_index[md] for md in modes], dtype=np.int64)
    back_map = np.full(len(itab.modes), -1, dtype=np.int64)
    back_map[col_map] = np.arange(n_modes)
    groups = dict(itab.pair_groups)

    ll_budget = basis.ll_budget
    index = basis._index

    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    vals: list[np.ndarray] = []

    # interaction: for each state, annihilate an occupied unordered pair,
    # create every m-conserving pair the Landau budget admits
    table_pairs_cache: dict[int, tuple] = {}
    for mtot, grp in groups.items():
        pairs = grp["pairs"]
        table_pairs_cache[mtot] = (
            pairs[:, 0], pairs[:, 1], grp["ll_sums"], grp["values"],
            grp["pair_index"],
        )

    for s in range(dim):
        occ = occm[s]
        occupied = np.flatnonzero(occ)
        state_ll = int(occ[occupied].astype(np.int64) @ ll_arr[occupied])
        for ai in range(occupied.size):
            p = int(occupied[ai])
            for bi in range(ai, occupied.size):
                q = int(occupied[bi])
                if p == q and occ[p] < 2:
                    continue
                mtot = int(m_arr[p] + m_arr[q])
                got = table_pairs_cache.get(mtot)
                if got is None:
                    continue
                k_idx, l_idx, ll_sums, values, pair_index = got
                cp, cq = int(col_map[p]), int(col_map[q])
                row_pq = pair_index.get((cp, cq) if cp <= cq else (cq, cp))
                if row_pq is None:
                    continue
                avail = ll_budget - state_ll + int(ll_arr[p] + ll_arr[q])
                cand = np.flatnonzero(
                    (ll_sums <= avail)
                    & (back_map[k_idx] >= 0)
                    & (back_map[l_idx] >= 0)
                )
                if cand.size == 0:
                    continue
                coeffs = values[row_pq, cand]
                live = np.abs(coeffs) >= ZERO_THRESHOLD
                cand = cand[live]
                if cand.size == 0:
                    continue
                coeffs = coeffs[live]

                amp_ann = math.sqrt(int(occ[p]) * int(occ[q] - (p == q)))
                mult_pq = 1.0 if p == q else 2.0
                kk = back_map[k_idx[cand]]
                ll_ = back_map[l_idx[cand]]
                # occupations after the two annihilations
                nk = occ[kk].astype(np.int64) - (kk == p) - (kk == q)
                nl = occ[ll_].astype(np.int64) - (ll_ == p) - (ll_ == q)
                same = kk == ll_
                amp_cre = np.sqrt((nl + 1) * (nk + 1 + same))
                mult_kl = np.where(same, 1.0, 2.0)
                entry = coeffs * (0.5 * mult_pq * mult_kl) * amp_ann * amp_cre

                target_rows = np.empty(cand.size, dtype=np.int64)
                base = occ.copy()
                base[p] -= 1
                base[q] -= 1
                for c in range(cand.size):
                    tocc = base.copy()
                    tocc[kk[c]] += 1
                    tocc[ll_[c]] += 1
                    target_rows[c] = index[tocc.tobytes()]
                rows.append(target_rows)
                cols.append(np.full(cand.size, s, dtype=np.int64))
                vals.append(entry)

    if rows:
        v = sparse.coo_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(dim, dim),
        ).tocsr()
    else:
        v = sparse.csr_matrix((dim, dim))
    v = ((v + v.T) * 0.5).tocsr()
    v.sum_duplicates()

    # anisotropy: single-particle hops with dm = +-2, projected on the basis
    partners: dict[int, list[tuple[int, float]]] = {a: [] for a in range(n_modes)}
    for a in range(n_modes):
        for b in range(n_modes):
            if a == b:
                continue
            val = atab.element(modes[a], modes[b])
            if val != 0.0:
                partners[a].append((b, val))

    wr: list[int] = []
    wc: list[int] = []
    wv: list[float] = []
    for s in range(dim):
        occ = occm[s]
        occupied = np.flatnonzero(occ)
        state_ll = int(occ[occupied].astype(np.int64) @ ll_arr[occupied])
        for a in occupied:
            a = int(a)
            for b, val in partners[a]:
                if state_ll - ll_arr[a] + ll_arr[b] > ll_budget:
                    continue
                tocc = occ.copy()
                tocc[a] -= 1
                tocc[b] += 1
                t = index.get(tocc.tobytes())
                if t is None:
                    continue  # L window edge
                wr.append(t)
                wc.append(s)
                wv.append(val * math.sqrt(int(occ[a]) * int(occ[b] + 1)))
    w = sparse.coo_matrix((wv, (wr, wc)), shape=(dim, dim)).tocsr()
    w = ((w + w.T) * 0.5).tocsr()
    w.sum_duplicates()

    return HamiltonianParts(basis=basis, h0=h0, lz=lz, v=v, w=w)


def matvec(parts: HamiltonianParts, omega: float, g: float, a: float,
           x: np.ndarray) -> np.ndarray:
    """Apply H(omega, g, A) to ``x`` without materializing H."""
    x = np.asarray(x, dtype=float)
    if x.shape != (parts.dimension,):
        raise ValueError(
            f"vector shape {x.shape} does not match dimension {parts.dimension}"
        )
    y = parts.h0 * x
    if omega != 0.0:
        y -= omega * (parts.lz * x)
    if g != 0.0:
        y += g * (parts.v @ x)
    if a != 0.0:
        y += a * (parts.w @ x)
    return y


def combine_dense(parts: HamiltonianParts, omega: float, g: float,
                  a: float) -> np.ndarray:
    """Dense H(omega, g, A); intended for small systems and cross-checks."""
    h = np.diag(parts.h0 - omega * parts.lz)
    if g != 0.0:
        h = h + g * parts.v.toarray()
    if a != 0.0:
        h = h + a * parts.w.toarray()
    return h
