"""Single-particle modes and truncated many-boson Fock bases.

Conventions
-----------
Single-particle states are 2D harmonic-oscillator eigenmodes labelled
``(n, m)`` with radial index ``n >= 0`` and angular momentum ``m`` (any
integer).  In trap units (energies in units of the transverse quantum,
lengths in units of the oscillator length) the mode energy is
``2n + |m| + 1`` and the Landau index is

    ll(n, m) = n + (|m| - m) / 2,

so the lowest Landau level is exactly ``{n = 0, m >= 0}``.

A basis is selected by three truncations applied to N-boson Fock states
over these modes:

* total Landau excitation ``sum_i ll(n_i, m_i) <= n_ll - 1``,
* total angular momentum ``L = sum_i m_i`` inside ``[l_min, l_max]``,
* per-mode angular momentum ``m <= m_cap`` (callers pass ``m_cap = l_max``,
  which is sufficient for any single particle).

Ordering is deterministic: modes sorted by ``(ll, m)``; Fock states sorted
by total ``L`` ascending and lexicographically by occupation vector inside
each ``L`` block, so that equal specs always produce byte-identical bases.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import DimensionCapError, EmptyBasisError

DIMENSION_CAP = 50_000_000


def landau_index(n: int, m: int) -> int:
    """Landau index ll(n, m) = n + (|m| - m)/2 of a single mode."""
    return n + (abs(m) - m) // 2


@dataclass(frozen=True)
class SpMode:
    """One single-particle oscillator mode (n, m)."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"radial index must be non-negative, got n={self.n}")

    @property
    def ll(self) -> int:
        return landau_index(self.n, self.m)

    @property
    def energy(self) -> float:
        """Mode energy 2n + |m| + 1 in trap units."""
        return 2 * self.n + abs(self.m) + 1


def enumerate_modes(n_ll: int, m_cap: int) -> list[SpMode]:
    """All modes with ``ll(n, m) <= n_ll - 1`` and ``m <= m_cap``.

    Sorted by ``(ll, m)``; within fixed ll and m the radial index is
    determined, so the order is total.
    """
    if n_ll < 1:
        raise ValueError(f"n_ll must be at least 1, got {n_ll}")
    if m_cap < 0:
        raise ValueError(f"m_cap must be non-negative, got {m_cap}")
    modes = []
    for level in range(n_ll):
        # m >= -level keeps n = level - (|m| - m)/2 non-negative
        for m in range(-level, m_cap + 1):
            n = level if m >= 0 else level + m
            modes.append(SpMode(n, m))
    return modes


@dataclass(frozen=True)
class BasisSpec:
    """Truncation parameters of a Fock basis."""

    n: int
    n_ll: int
    l_min: int
    l_max: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"particle number must be positive, got {self.n}")
        if self.n_ll < 1:
            raise ValueError(f"n_ll must be at least 1, got {self.n_ll}")
        if self.l_min > self.l_max:
            raise ValueError(f"empty L window [{self.l_min}, {self.l_max}]")
        if self.l_max < 0:
            raise ValueError(f"l_max must be non-negative, got {self.l_max}")


class FockBasis:
    """Deterministically ordered N-boson Fock basis under the truncations.

    Attributes
    ----------
    spec : BasisSpec
    modes : tuple[SpMode, ...]
        Active modes in canonical order.
    occupations : np.ndarray
        ``(dimension, n_modes)`` int8 occupation matrix.
    l_values : np.ndarray
        Total angular momentum per state.
    blocks : dict[int, tuple[int, int]]
        For each L in the window, the contiguous [start, stop) index range.
    """

    def __init__(self, spec: BasisSpec, modes: list[SpMode], occupations: np.ndarray,
                 ll_budget: int | None = None):
        self.spec = spec
        self.modes = tuple(modes)
        self.occupations = occupations
        self.ll_budget = spec.n_ll - 1 if ll_budget is None else ll_budget
        m_arr = np.array([md.m for md in self.modes], dtype=np.int64)
        self.l_values = occupations.astype(np.int64) @ m_arr
        self._index = {row.tobytes(): i for i, row in enumerate(occupations)}
        self.blocks: dict[int, tuple[int, int]] = {}
        for l in range(spec.l_min, spec.l_max + 1):
            start = int(np.searchsorted(self.l_values, l, side="left"))
            stop = int(np.searchsorted(self.l_values, l, side="right"))
            self.blocks[l] = (start, stop)

    @property
    def dimension(self) -> int:
        return self.occupations.shape[0]

    def index_of(self, occupation) -> int:
        """Index of an occupation vector; raises KeyError if absent."""
        key = np.asarray(occupation, dtype=np.int8).tobytes()
        return self._index[key]

    def state_occupations(self, i: int) -> dict[SpMode, int]:
        """Occupation map of state ``i``, omitting empty modes."""
        row = self.occupations[i]
        return {self.modes[j]: int(row[j]) for j in np.flatnonzero(row)}

    def state_line(self, i: int) -> str:
        """Debug dump line ``L=<L> | (n,m)^count ...`` for one state."""
        parts = [
            f"({md.n},{md.m})^{cnt}" for md, cnt in self.state_occupations(i).items()
        ]
        return f"L={int(self.l_values[i])} | " + " ".join(parts)

    def __repr__(self):
        s = self.spec
        return (
            f"FockBasis(n={s.n}, n_ll={s.n_ll}, L=[{s.l_min},{s.l_max}], "
            f"dim={self.dimension})"
        )


def block_of(basis: FockBasis, l: int) -> range:
    """Index range of the total-angular-momentum block L = l.

    Empty ranges are legal for in-window L values with no states; L outside
    the window raises.
    """
    if l < basis.spec.l_min or l > basis.spec.l_max:
        raise ValueError(
            f"L={l} outside the basis window [{basis.spec.l_min}, {basis.spec.l_max}]"
        )
    start, stop = basis.blocks[l]
    return range(start, stop)


def _suffix_bounds(modes: list[SpMode]) -> tuple[np.ndarray, np.ndarray]:
    # max/min mode angular momentum over modes[i:], used for window pruning
    k = len(modes)
    mmax = np.empty(k + 1, dtype=np.int64)
    mmin = np.empty(k + 1, dtype=np.int64)
    mmax[k] = -(10**9)
    mmin[k] = 10**9
    for i in range(k - 1, -1, -1):
        mmax[i] = max(modes[i].m, mmax[i + 1])
        mmin[i] = min(modes[i].m, mmin[i + 1])
    return mmax, mmin


def count_dimension(spec: BasisSpec, modes: list[SpMode] | None = None,
                    ll_budget: int | None = None) -> int:
    """Number of Fock states the spec admits, without enumerating them."""
    if modes is None:
        modes = enumerate_modes(spec.n_ll, m_cap=spec.l_max)
    if ll_budget is None:
        ll_budget = spec.n_ll - 1
    mmax, mmin = _suffix_bounds(modes)
    lls = [md.ll for md in modes]
    ms = [md.m for md in modes]
    k = len(modes)
    memo: dict[tuple, int] = {}

    def rec(i: int, left: int, budget: int, l_acc: int) -> int:
        if left == 0:
            return 1 if spec.l_min <= l_acc <= spec.l_max else 0
        if i == k:
            return 0
        if l_acc + left * mmax[i] < spec.l_min:
            return 0
        if l_acc + left * mmin[i] > spec.l_max:
            return 0
        key = (i, left, budget, l_acc)
        got = memo.get(key)
        if got is not None:
            return got
        cmax = left if lls[i] == 0 else min(left, budget // lls[i])
        total = 0
        for c in range(cmax + 1):
            total += rec(i + 1, left - c, budget - c * lls[i], l_acc + c * ms[i])
        memo[key] = total
        return total

    return rec(0, spec.n, ll_budget, 0)


def _enumerate_states(spec: BasisSpec, modes: list[SpMode],
                      ll_budget: int) -> Iterator[np.ndarray]:
    mmax, mmin = _suffix_bounds(modes)
    lls = [md.ll for md in modes]
    ms = [md.m for md in modes]
    k = len(modes)
    occ = np.zeros(k, dtype=np.int8)

    def rec(i: int, left: int, budget: int, l_acc: int):
        if left == 0:
            if spec.l_min <= l_acc <= spec.l_max:
                yield occ.copy()
            return
        if i == k:
            return
        if l_acc + left * mmax[i] < spec.l_min:
            return
        if l_acc + left * mmin[i] > spec.l_max:
            return
        cmax = left if lls[i] == 0 else min(left, budget // lls[i])
        for c in range(cmax + 1):
            occ[i] = c
            yield from rec(i + 1, left - c, budget - c * lls[i], l_acc + c * ms[i])
        occ[i] = 0

    yield from rec(0, spec.n, ll_budget, 0)


def build_basis(spec: BasisSpec, dimension_cap: int = DIMENSION_CAP,
                ll_budget: int | None = None) -> FockBasis:
    """Enumerate the truncated N-boson basis for ``spec``.

    Parameters
    ----------
    dimension_cap : int
        Hard cap on the state count; exceeding it raises DimensionCapError
        reporting the would-be dimension.
    ll_budget : int, optional
        Override of the total Landau excitation budget (default
        ``n_ll - 1``).  Used to restrict a multi-level mode set to its
        lowest-level states for nesting checks.
    """
    modes = enumerate_modes(spec.n_ll, m_cap=spec.l_max)
    if ll_budget is None:
        ll_budget = spec.n_ll - 1
    dim = count_dimension(spec, modes, ll_budget)
    if dim > dimension_cap:
        raise DimensionCapError(dim, dimension_cap)
    if dim == 0:
        raise EmptyBasisError(
            f"no state satisfies n={spec.n}, n_ll={spec.n_ll}, "
            f"L in [{spec.l_min}, {spec.l_max}]"
        )
    states = list(_enumerate_states(spec, modes, ll_budget))
    m_arr = np.array([md.m for md in modes], dtype=np.int64)
    keyed = sorted(states, key=lambda row: (int(row.astype(np.int64) @ m_arr),
                                            tuple(row)))
    occm = np.array(keyed, dtype=np.int8)
    return FockBasis(spec, modes, occm, ll_budget=ll_budget)
