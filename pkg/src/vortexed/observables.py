"""Ground-state structure: density matrices, natural orbitals, two-mode
content and quantum Fisher information.

The single-particle density matrix is rho_{lk} = <a+_k a_l>; it is built as
C^T C where C maps the state through every single annihilation, so it is
positive semidefinite and traces to N by construction.  Because the
Hamiltonian couples total angular momentum only in steps of 2, physical
ground states give a rho that is exactly block diagonal between even-m and
odd-m modes; natural orbitals then carry a definite m parity, which is what
breaks the tie when the two leading occupations cross.

Phase-estimation quantities follow the two-mode picture built on the two
leading natural orbitals psi_1, psi_2:

* C_n = <(N - 2n) psi_1, 2n psi_2 | Psi>, P_n = C_n^2, fidelity = sum P_n,
* F_Q = 4 var(n_1) with n_1 the psi_1 number operator, evaluated on the
  full state (not the two-mode truncation).

Both are computed by repeated annihilation of the orbital from the state,
which is exact and cheap; a literal change of basis of the whole state
(:func:`mode_rotate`, two-mode plane rotations applied in Fock space) is
kept as the cross-check path for systems small enough to afford the
untruncated rotated space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import FockBasis, SpMode
from .errors import (
    LeakageError,
    OrbitalConsistencyError,
    UnnormalizedStateError,
)

NORM_TOL = 1e-10
PARITY_TIE_TOL = 1e-4  # per particle, see leading_pair


def _check_normalized(state: np.ndarray) -> None:
    nrm = np.linalg.norm(state)
    if abs(nrm - 1.0) > NORM_TOL:
        raise UnnormalizedStateError(f"state norm {nrm} deviates from 1")


class AnnihilationLadder:
    """Chain of (N - j)-boson spaces reachable from a basis by annihilation.

    Level 0 is the basis itself; level j+1 collects every occupation vector
    obtained from level j by removing one particle.  Edges store, per level,
    the sparse action of every mode annihilator, so applying
    ``b = sum_k c_k a_k`` is one fused scatter-add.
    """

    def __init__(self, basis: FockBasis):
        self.basis = basis
        self.n_modes = len(basis.modes)
        occ = basis.occupations
        self.level_dims = [occ.shape[0]]
        self.edges: list[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = []
        for _ in range(basis.spec.n):
            nxt_index: dict[bytes, int] = {}
            nxt_rows: list[np.ndarray] = []
            src: list[int] = []
            mde: list[int] = []
            dst: list[int] = []
            amp: list[float] = []
            for i in range(occ.shape[0]):
                row = occ[i]
                for j in np.flatnonzero(row):
                    nr = row.copy()
                    nr[j] -= 1
                    key = nr.tobytes()
                    d = nxt_index.get(key)
                    if d is None:
                        d = len(nxt_rows)
                        nxt_index[key] = d
                        nxt_rows.append(nr)
                    src.append(i)
                    mde.append(int(j))
                    dst.append(d)
                    amp.append(math.sqrt(float(row[j])))
            self.edges.append((
                np.array(src, dtype=np.int64),
                np.array(mde, dtype=np.int64),
                np.array(dst, dtype=np.int64),
                np.array(amp, dtype=float),
            ))
            occ = np.array(nxt_rows, dtype=np.int8) if nxt_rows else np.zeros((0, self.n_modes), np.int8)
            self.level_dims.append(occ.shape[0])

    def lower(self, level: int, coeffs: np.ndarray, vec: np.ndarray) -> np.ndarray:
        """Apply ``sum_k coeffs[k] a_k`` to a level-``level`` vector."""
        src, mde, dst, amp = self.edges[level]
        out = np.zeros(self.level_dims[level + 1])
        np.add.at(out, dst, coeffs[mde] * amp * vec[src])
        return out


@dataclass
class SPDM:
    """Single-particle density matrix over the basis modes."""

    matrix: np.ndarray
    modes: tuple[SpMode, ...]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))


def spdm(state: np.ndarray, basis: FockBasis,
         ladder: AnnihilationLadder | None = None) -> SPDM:
    """rho_{lk} = <a+_k a_l> of a normalized state."""
    _check_normalized(state)
    if ladder is None:
        ladder = AnnihilationLadder(basis)
    src, mde, dst, amp = ladder.edges[0]
    c = np.zeros((ladder.level_dims[1], ladder.n_modes))
    np.add.at(c, (dst, mde), amp * state[src])
    rho = c.T @ c
    rho = (rho + rho.T) * 0.5
    return SPDM(matrix=rho, modes=basis.modes)


@dataclass
class NaturalOrbitals:
    """Eigenstructure of an SPDM.

    occupations : descending eigenvalues.
    orbitals : matching eigenvectors as columns over the modes.
    parities : +1 where the orbital lives on even-m modes, -1 on odd.
    """

    occupations: np.ndarray
    orbitals: np.ndarray
    parities: np.ndarray

    def orbital(self, i: int) -> np.ndarray:
        return self.orbitals[:, i]


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(vec)))
    return -vec if vec[i] < 0 else vec


def natural_orbitals(rho: SPDM) -> NaturalOrbitals:
    """Occupations and orbitals, descending, with deterministic phases.

    When the density matrix decouples between even-m and odd-m modes (true
    for every physical ground state here) each block is diagonalized
    separately, so orbitals carry exact parity even at degeneracies.  Equal
    occupations are ordered even parity first; the overall sign makes the
    largest-magnitude coefficient positive.
    """
    m_par = np.array([md.m % 2 for md in rho.modes])
    even = np.flatnonzero(m_par == 0)
    odd = np.flatnonzero(m_par == 1)
    mat = rho.matrix
    n = mat.shape[0]
    cross = 0.0
    if even.size and odd.size:
        cross = float(np.max(np.abs(mat[np.ix_(even, odd)])))

    occs: list[float] = []
    vecs: list[np.ndarray] = []
    pars: list[int] = []
    if cross <= 1e-10 * max(1.0, float(np.trace(mat))):
        for idxs, par in ((even, 1), (odd, -1)):
            if idxs.size == 0:
                continue
            evals, evecs = np.linalg.eigh(mat[np.ix_(idxs, idxs)])
            for i in range(idxs.size):
                full = np.zeros(n)
                full[idxs] = evecs[:, i]
                occs.append(float(evals[i]))
                vecs.append(full)
                pars.append(par)
    else:
        evals, evecs = np.linalg.eigh(mat)
        for i in range(n):
            v = evecs[:, i]
            w_even = float(np.sum(v[even] ** 2)) if even.size else 0.0
            occs.append(float(evals[i]))
            vecs.append(v)
            pars.append(1 if w_even >= 0.5 else -1)

    occs_arr = np.array(occs)
    pars_arr = np.array(pars)
    # descending occupation; exact ties favour even parity, then block order
    order = sorted(range(len(occs)),
                   key=lambda i: (-occs_arr[i], 0 if pars_arr[i] == 1 else 1, i))
    orbitals = np.column_stack([_fix_sign(vecs[i]) for i in order])
    return NaturalOrbitals(
        occupations=occs_arr[order],
        orbitals=orbitals,
        parities=pars_arr[order],
    )


def leading_pair(orbs: NaturalOrbitals, n_particles: int,
                 tie_tol: float = PARITY_TIE_TOL) -> tuple[np.ndarray, np.ndarray]:
    """The two most occupied orbitals (psi_1, psi_2).

    Within ``tie_tol * N`` of a degeneracy the even-parity orbital is taken
    first, which keeps the labels continuous through the occupation
    crossing.
    """
    if orbs.occupations.size < 2:
        raise ValueError("need at least two natural orbitals")
    i1, i2 = 0, 1
    if (abs(orbs.occupations[0] - orbs.occupations[1]) <= tie_tol * n_particles
            and orbs.parities[0] == -1 and orbs.parities[1] == 1):
        i1, i2 = 1, 0
    return orbs.orbital(i1), orbs.orbital(i2)


@dataclass
class QfiResult:
    """Quantum Fisher information of phase imprinting on orbital psi_1."""

    f_q: float
    mean_n1: float
    var_n1: float

    @property
    def dphi_bound(self) -> float:
        return 1.0 / math.sqrt(self.f_q) if self.f_q > 0 else math.inf


def _check_orbital(state: np.ndarray, basis: FockBasis, psi: np.ndarray,
                   ladder: AnnihilationLadder) -> None:
    rho = spdm(state, basis, ladder).matrix
    lam = float(psi @ rho @ psi)
    resid = float(np.linalg.norm(rho @ psi - lam * psi))
    if resid > 1e-6 * basis.spec.n:
        raise OrbitalConsistencyError(
            f"orbital is not an SPDM eigenvector (residual {resid:.3e})"
        )


def qfi(state: np.ndarray, basis: FockBasis,
        orbitals: "NaturalOrbitals | np.ndarray",
        ladder: AnnihilationLadder | None = None,
        check: bool = True) -> QfiResult:
    """F_Q = 4 var(n_1) on the full state, n_1 counting bosons in psi_1.

    ``orbitals`` is either the NaturalOrbitals of this state (psi_1 picked
    by :func:`leading_pair`) or an explicit coefficient vector.  The moments
    are contractions of one- and two-body correlators with the orbital
    coefficients; organized as repeated annihilation they are
    ``<n_1> = |b_1 Psi|^2`` and ``<b+ b+ b b> = |b_1 b_1 Psi|^2``.
    """
    _check_normalized(state)
    if ladder is None:
        ladder = AnnihilationLadder(basis)
    if isinstance(orbitals, NaturalOrbitals):
        psi1, _ = leading_pair(orbitals, basis.spec.n)
    else:
        psi1 = orbitals
    psi1 = np.asarray(psi1, dtype=float)
    if check:
        _check_orbital(state, basis, psi1, ladder)
    v1 = ladder.lower(0, psi1, state)
    mean = float(v1 @ v1)
    if basis.spec.n >= 2:
        v2 = ladder.lower(1, psi1, v1)
        second = float(v2 @ v2) + mean
    else:
        second = mean
    var = second - mean * mean
    return QfiResult(f_q=4.0 * var, mean_n1=mean, var_n1=var)


@dataclass
class TwoModeDecomposition:
    """Even-split two-mode content of an even-N state."""

    c_n: np.ndarray  # n = 0 .. N/2, amplitude of (N-2n, 2n)
    p_n: np.ndarray
    fidelity: float
    odd_weight: float  # diagnostic: weight on odd psi_2 occupations

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(self.c_n.size)


def two_mode_decompose(state: np.ndarray, basis: FockBasis,
                       orbitals: "NaturalOrbitals | tuple[np.ndarray, np.ndarray]",
                       ladder: AnnihilationLadder | None = None) -> TwoModeDecomposition:
    """Project onto |(N - 2n) psi_1, 2n psi_2> for n = 0 .. N/2.

    ``orbitals`` is the state's NaturalOrbitals (psi_1, psi_2 picked by
    :func:`leading_pair`) or an explicit (psi_1, psi_2) pair.  The amplitude
    of exactly (N-j) quanta in psi_1 and j in psi_2 (and none elsewhere) is
    read off by annihilating psi_2 j times and psi_1 N-j times down to the
    vacuum.  Odd-j weights, excluded from the even-split expansion by
    parity, are returned as a diagnostic.
    """
    n = basis.spec.n
    if n % 2 != 0:
        raise ValueError(f"two-mode split needs even N, got {n}")
    _check_normalized(state)
    if ladder is None:
        ladder = AnnihilationLadder(basis)
    if isinstance(orbitals, NaturalOrbitals):
        psi1, psi2 = leading_pair(orbitals, n)
    else:
        psi1, psi2 = orbitals
    psi1 = np.asarray(psi1, dtype=float)
    psi2 = np.asarray(psi2, dtype=float)

    amps = np.zeros(n + 1)
    w = state
    for j in range(n + 1):  # w = b_2^j |Psi> at level j
        z = w
        for r in range(j, n):
            z = ladder.lower(r, psi1, z)
        vac = float(z[0]) if z.size else 0.0
        amps[j] = vac / math.sqrt(math.factorial(n - j) * math.factorial(j))
        if j < n:
            w = ladder.lower(j, psi2, w)

    c_n = amps[0::2].copy()
    p_n = c_n**2
    odd = float(np.sum(amps[1::2] ** 2))
    return TwoModeDecomposition(
        c_n=c_n, p_n=p_n, fidelity=float(np.sum(p_n)), odd_weight=odd
    )


class DenseFockSpace:
    """Every N-boson occupation vector over a fixed mode count.

    States are ordered lexicographically descending, so (N, 0, ..., 0) is
    first.  Only affordable for small N and mode counts; used as the target
    space of :func:`mode_rotate`.
    """

    def __init__(self, n_modes: int, n_particles: int):
        self.n_modes = n_modes
        self.n_particles = n_particles
        states: list[tuple[int, ...]] = []

        def rec(prefix: list[int], left: int):
            if len(prefix) == n_modes - 1:
                states.append(tuple(prefix) + (left,))
                return
            for c in range(left, -1, -1):
                rec(prefix + [c], left - c)

        if n_modes == 0:
            if n_particles == 0:
                states.append(())
        else:
            rec([], n_particles)
        self.states = states
        self.index = {s: i for i, s in enumerate(states)}

    @property
    def dimension(self) -> int:
        return len(self.states)


@dataclass
class RotatedState:
    """Amplitudes of a state in a rotated single-particle basis."""

    space: DenseFockSpace
    amplitudes: np.ndarray


def _pair_rotation_block(total: int, c: float, s: float) -> np.ndarray:
    """Matrix of a two-mode rotation on the (n_i + n_j = total) subspace.

    Columns are old occupations (u, total-u), rows new ones (p, total-p);
    the old pair operators expand as f+_x = c g+_x - s g+_y and
    f+_y = s g+_x + c g+_y.
    """
    block = np.zeros((total + 1, total + 1))
    for u in range(total + 1):
        v = total - u
        for a in range(u + 1):
            for b in range(v + 1):
                p = a + b
                coeff = (
                    math.comb(u, a) * math.comb(v, b)
                    * (c**a) * ((-s) ** (u - a)) * (s**b) * (c ** (v - b))
                )
                block[p, u] += coeff * math.sqrt(
                    math.factorial(p) * math.factorial(total - p)
                    / (math.factorial(u) * math.factorial(v))
                )
    return block


def complete_orbital_matrix(columns: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns to a full orthogonal matrix."""
    m, k = columns.shape
    q, _ = np.linalg.qr(np.hstack([columns, np.eye(m)]))
    q = q[:, :m]
    for i in range(k):
        if q[:, i] @ columns[:, i] < 0:
            q[:, i] = -q[:, i]
    return q


def mode_rotate(state: np.ndarray, basis: FockBasis, u: np.ndarray) -> RotatedState:
    """Express the state in the rotated mode basis b+_k = sum_j U[j,k] a+_j.

    U must be orthonormal over the active modes (columns short of square are
    completed by an orthogonal complement).  The rotation is decomposed into
    two-mode plane rotations, each applied exactly inside its invariant
    fixed-total subspaces.  The output lives in the untruncated N-boson
    space over the same modes, since rotated modes carry no good L or Landau
    numbers; any norm loss beyond 1e-8 raises LeakageError.
    """
    _check_normalized(state)
    u = np.asarray(u, dtype=float)
    n_modes = len(basis.modes)
    if u.shape[0] != n_modes:
        raise ValueError(f"orbital matrix has {u.shape[0]} rows, basis has {n_modes} modes")
    if u.shape[1] < n_modes:
        u = complete_orbital_matrix(u)
    if np.max(np.abs(u.T @ u - np.eye(n_modes))) > 1e-10:
        raise ValueError("orbital matrix is not orthonormal within 1e-10")

    # Givens factorization: rotations reducing U to diag(+-1)
    r = u.copy()
    rotations: list[tuple[int, int, float, float]] = []
    for col in range(n_modes):
        for row in range(n_modes - 1, col, -1):
            a, b = r[row - 1, col], r[row, col]
            if abs(b) < 1e-14:
                continue
            h = math.hypot(a, b)
            c, s = a / h, b / h
            gi = np.array([[c, s], [-s, c]])
            r[[row - 1, row], :] = gi @ r[[row - 1, row], :]
            rotations.append((row - 1, row, c, s))
    signs = np.sign(np.diag(r))

    n = basis.spec.n
    amps: dict[tuple[int, ...], float] = {}
    for i, a in enumerate(state):
        if a != 0.0:
            amps[tuple(int(x) for x in basis.occupations[i])] = float(a)

    blocks = [None] * (n + 1)
    for x, y, c, s in rotations:
        for t in range(n + 1):
            blocks[t] = None
        new: dict[tuple[int, ...], float] = {}
        for key, a in amps.items():
            uo, vo = key[x], key[y]
            total = uo + vo
            if blocks[total] is None:
                blocks[total] = _pair_rotation_block(total, c, s)
            col = blocks[total][:, uo]
            kl = list(key)
            for p in range(total + 1):
                coeff = col[p]
                if coeff == 0.0:
                    continue
                kl[x] = p
                kl[y] = total - p
                nk = tuple(kl)
                new[nk] = new.get(nk, 0.0) + a * coeff
        amps = {key: a for key, a in new.items() if a != 0.0}

    if np.any(signs < 0):
        flips = np.flatnonzero(signs < 0)
        for key in list(amps):
            par = sum(key[j] for j in flips) % 2
            if par:
                amps[key] = -amps[key]

    space = DenseFockSpace(n_modes, n)
    out = np.zeros(space.dimension)
    for key, a in amps.items():
        out[space.index[key]] = a
    nrm = float(np.linalg.norm(out))
    if abs(nrm - 1.0) > 1e-8:
        raise LeakageError(f"rotation lost norm: |Psi'| = {nrm}")
    return RotatedState(space=space, amplitudes=out)


@dataclass
class MetrologyReport:
    """Bundle of the metrology observables of one ground state."""

    omega: float
    occupations: np.ndarray
    c_n: np.ndarray
    p_n: np.ndarray
    fidelity: float
    odd_weight: float
    f_q: float
    dphi_bound: float
    mean_n1: float

    def to_dict(self) -> dict:
        return {
            "omega": self.omega,
            "occupations": [float(x) for x in self.occupations],
            "c_n": [float(x) for x in self.c_n],
            "p_n": [float(x) for x in self.p_n],
            "fidelity": self.fidelity,
            "odd_weight": self.odd_weight,
            "f_q": self.f_q,
            "dphi_bound": None if math.isinf(self.dphi_bound) else self.dphi_bound,
            "mean_n1": self.mean_n1,
        }
