"""Mode enumeration and Fock basis construction."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vortexed as vx
from vortexed.basis import BasisSpec, SpMode, build_basis, count_dimension, enumerate_modes
from vortexed.errors import DimensionCapError, EmptyBasisError

from oracles import partition_count


def modes_as_tuples(modes):
    return [(m.n, m.m) for m in modes]


class TestModes:
    def test_landau_index(self):
        assert vx.landau_index(0, 3) == 0
        assert vx.landau_index(0, -1) == 1
        assert vx.landau_index(2, 0) == 2
        assert vx.landau_index(1, -2) == 3

    def test_lll_enumeration(self):
        assert modes_as_tuples(enumerate_modes(1, 3)) == [(0, 0), (0, 1), (0, 2), (0, 3)]

    def test_two_level_enumeration(self):
        # all modes with ll <= 1 and m <= 1
        got = set(modes_as_tuples(enumerate_modes(2, 1)))
        assert got == {(0, 0), (0, 1), (1, 0), (1, 1), (0, -1)}

    def test_single_mode(self):
        assert modes_as_tuples(enumerate_modes(1, 0)) == [(0, 0)]

    def test_order_is_ll_then_m_then_n(self):
        modes = enumerate_modes(3, 2)
        keys = [(m.ll, m.m, m.n) for m in modes]
        assert keys == sorted(keys)

    def test_energy_and_ll_invariants(self):
        for m in enumerate_modes(3, 5):
            assert m.energy == 2 * m.n + abs(m.m) + 1
            assert m.ll == m.n + (abs(m.m) - m.m) // 2 >= 0

    def test_rejects_bad_n_ll(self):
        with pytest.raises(ValueError):
            enumerate_modes(0, 3)


class TestBuildBasis:
    def test_two_boson_lll_example(self):
        basis = build_basis(BasisSpec(n=2, n_ll=1, l_min=0, l_max=2))
        assert basis.dimension == 4
        got = {tuple(row) for row in basis.occupations}
        # modes ordered (0,0),(0,1),(0,2)
        assert got == {(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0)}

    def test_single_boson_counts(self):
        for l_max in (0, 3, 7):
            basis = build_basis(BasisSpec(n=1, n_ll=1, l_min=0, l_max=l_max))
            assert basis.dimension == l_max + 1

    def test_condensate_only(self):
        basis = build_basis(BasisSpec(n=12, n_ll=1, l_min=0, l_max=0))
        assert basis.dimension == 1
        assert basis.occupations[0][0] == 12

    def test_bijection(self, lll_basis_small):
        basis = lll_basis_small
        for i in range(basis.dimension):
            assert basis.index_of(basis.occupations[i]) == i

    def test_blocks_cover_everything(self, two_level_basis_small):
        basis = two_level_basis_small
        seen = np.zeros(basis.dimension, dtype=bool)
        for l, (lo, hi) in basis.blocks.items():
            rng_ = vx.block_of(basis, l)
            assert (rng_.start, rng_.stop) == (lo, hi)
            assert not seen[lo:hi].any()
            seen[lo:hi] = True
            assert np.all(basis.l_values[lo:hi] == l)
        assert seen.all()

    def test_block_outside_window_raises(self, lll_basis_small):
        with pytest.raises(ValueError):
            vx.block_of(lll_basis_small, 99)

    def test_l_sorted_and_deterministic(self):
        spec = BasisSpec(n=4, n_ll=2, l_min=-2, l_max=5)
        a = build_basis(spec)
        b = build_basis(spec)
        assert np.array_equal(a.occupations, b.occupations)
        assert np.all(np.diff(a.l_values) >= 0)

    def test_state_invariants(self, two_level_basis_small):
        basis = two_level_basis_small
        lls = np.array([m.ll for m in basis.modes])
        ms = np.array([m.m for m in basis.modes])
        occ = basis.occupations.astype(np.int64)
        assert np.all(occ.sum(axis=1) == basis.spec.n)
        assert np.all(occ @ lls <= basis.spec.n_ll - 1)
        ls = occ @ ms
        assert np.all((ls >= basis.spec.l_min) & (ls <= basis.spec.l_max))

    def test_dimension_cap(self):
        with pytest.raises(DimensionCapError) as err:
            build_basis(BasisSpec(n=8, n_ll=1, l_min=0, l_max=12), dimension_cap=10)
        assert "10" in str(err.value)  # reports the would-be dimension context

    def test_empty_basis_error_class(self):
        # every valid window contains a reachable L, so the error is defensive;
        # it must still exist and carry the package error type for exit codes
        assert issubclass(EmptyBasisError, vx.VortexedError)


class TestCounting:
    @given(n=st.integers(2, 6), l_max=st.integers(0, 10))
    @settings(max_examples=40, deadline=None)
    def test_lll_dimension_matches_partition_count(self, n, l_max):
        spec = BasisSpec(n=n, n_ll=1, l_min=0, l_max=l_max)
        expected = sum(partition_count(l, n) for l in range(l_max + 1))
        assert count_dimension(spec) == expected
        assert build_basis(spec).dimension == expected

    @given(n=st.integers(2, 5), n_ll=st.integers(1, 3),
           l_min=st.integers(-3, 0), l_max=st.integers(0, 6))
    @settings(max_examples=30, deadline=None)
    def test_count_agrees_with_enumeration(self, n, n_ll, l_min, l_max):
        spec = BasisSpec(n=n, n_ll=n_ll, l_min=l_min, l_max=l_max)
        assert count_dimension(spec) == build_basis(spec).dimension

    def test_nested_truncation_recovers_lll(self):
        # an n_ll=2 basis restricted to zero Landau excitation is the LLL basis
        lll = build_basis(BasisSpec(n=4, n_ll=1, l_min=0, l_max=6))
        restricted = build_basis(BasisSpec(n=4, n_ll=2, l_min=0, l_max=6), ll_budget=0)
        lls = np.array([m.ll for m in restricted.modes])
        keep = restricted.occupations[:, lls > 0].sum(axis=1) == 0
        assert keep.all()
        lll_cols = [restricted.modes.index(m) for m in lll.modes]
        assert np.array_equal(restricted.occupations[:, lll_cols], lll.occupations)
        assert restricted.dimension == lll.dimension


def test_state_line_format(lll_basis_small):
    line = lll_basis_small.state_line(0)
    assert line.startswith("L=0")
    assert "(0,0)^3" in line
