"""Krylov eigensolver checked against dense symmetric diagonalization."""
import numpy as np
import pytest

import vortexed as vx
from vortexed.eigensolver import DimensionTooLargeError

from conftest import random_state


@pytest.fixture(scope="module")
def parts_2ll():
    basis = vx.build_basis(vx.BasisSpec(n=4, n_ll=2, l_min=-2, l_max=8))
    return vx.assemble(basis, vx.build_tables(list(basis.modes)))


class TestLowestEigenpairs:
    def test_noninteracting_condensate(self, lll_basis_small):
        parts = vx.assemble(lll_basis_small, vx.build_tables(list(lll_basis_small.modes)))
        res = vx.lowest_eigenpairs(parts, omega=0.5, g=0.0, a=0.0, k=2)
        assert res.eigenvalues[0] == pytest.approx(lll_basis_small.spec.n, abs=1e-10)

    def test_matches_dense(self, parts_2ll):
        dense = np.sort(np.linalg.eigvalsh(vx.combine_dense(parts_2ll, 0.8, 0.5, 0.03)))
        res = vx.lowest_eigenpairs(parts_2ll, omega=0.8, g=0.5, a=0.03, k=4)
        assert np.max(np.abs(res.eigenvalues - dense[:4])) <= 1e-9

    def test_seed_determinism(self, parts_2ll):
        r1 = vx.lowest_eigenpairs(parts_2ll, 0.85, 0.5, 0.03, k=3, seed=7)
        r2 = vx.lowest_eigenpairs(parts_2ll, 0.85, 0.5, 0.03, k=3, seed=7)
        assert np.array_equal(r1.eigenvalues, r2.eigenvalues)
        assert np.array_equal(r1.eigenvectors, r2.eigenvectors)

    def test_residuals_via_matvec(self, parts_2ll):
        tol = 1e-10
        res = vx.lowest_eigenpairs(parts_2ll, 0.8, 0.5, 0.03, k=4, tol=tol)
        assert res.all_converged
        for j in range(4):
            v = res.eigenvectors[:, j]
            r = vx.matvec(parts_2ll, 0.8, 0.5, 0.03, v) - res.eigenvalues[j] * v
            assert np.linalg.norm(r) <= tol
            assert res.residual_norms[j] <= tol

    def test_rayleigh_quotient(self, parts_2ll):
        res = vx.lowest_eigenpairs(parts_2ll, 0.8, 0.5, 0.03, k=3)
        for j in range(3):
            v = res.eigenvectors[:, j]
            rq = v @ vx.matvec(parts_2ll, 0.8, 0.5, 0.03, v)
            assert rq == pytest.approx(res.eigenvalues[j], abs=1e-10)

    def test_orthonormality(self, parts_2ll):
        res = vx.lowest_eigenpairs(parts_2ll, 0.8, 0.5, 0.03, k=4)
        gram = res.eigenvectors.T @ res.eigenvectors
        assert np.max(np.abs(gram - np.eye(4))) <= 1e-10

    def test_eigenvalues_ascending(self, parts_2ll):
        res = vx.lowest_eigenpairs(parts_2ll, 0.9, 0.5, 0.03, k=4)
        assert np.all(np.diff(res.eigenvalues) >= 0.0)

    def test_near_degenerate_pair_resolved(self, engine_n6_lll):
        # without anisotropy the L=0 and L=N yrast levels cross exactly;
        # place omega at the crossing and demand both members converge
        parts = engine_n6_lll.parts
        h0 = vx.combine_dense(parts, 0.0, 0.5, 0.0)
        lv = np.asarray(parts.basis.l_values)
        blk = lambda L: np.linalg.eigvalsh(h0[np.ix_(np.flatnonzero(lv == L),
                                                     np.flatnonzero(lv == L))])[0]
        omega_star = (blk(6) - blk(0)) / 6.0
        res = vx.lowest_eigenpairs(parts, omega_star, 0.5, 0.0, k=3, tol=1e-10)
        assert abs(res.eigenvalues[1] - res.eigenvalues[0]) <= 1e-9
        assert res.converged[0] and res.converged[1]
        dense = np.sort(np.linalg.eigvalsh(
            vx.combine_dense(parts, omega_star, 0.5, 0.0)))
        assert np.max(np.abs(res.eigenvalues - dense[:3])) <= 1e-9

    def test_warm_start_matches_cold(self, parts_2ll, rng):
        cold = vx.lowest_eigenpairs(parts_2ll, 0.82, 0.5, 0.03, k=2)
        warm = vx.lowest_eigenpairs(parts_2ll, 0.82, 0.5, 0.03, k=2,
                                    start_vector=random_state(parts_2ll.basis, rng))
        assert np.max(np.abs(cold.eigenvalues - warm.eigenvalues)) <= 1e-9

    def test_ground_state_continuity(self, engine_n6_lll):
        parts = engine_n6_lll.parts
        cp = vx.find_critical(engine_n6_lll, 0.7, 0.99)
        lo = vx.lowest_eigenpairs(parts, cp.omega_c - 2e-3, 0.5, 0.03, k=1)
        hi = vx.lowest_eigenpairs(parts, cp.omega_c - 2e-3 + 1e-4, 0.5, 0.03, k=1)
        assert abs(lo.eigenvectors[:, 0] @ hi.eigenvectors[:, 0]) > 0.99


class TestDenseSpectrum:
    def test_single_state_value(self):
        basis = vx.build_basis(vx.BasisSpec(n=2, n_ll=1, l_min=0, l_max=0))
        parts = vx.assemble(basis, vx.build_tables(list(basis.modes)))
        vals = vx.dense_spectrum(parts, 0.0, 0.5, 0.0)
        assert vals.shape == (1,)
        assert vals[0] == pytest.approx(2.0 + 0.5 / (2 * np.pi), abs=1e-12)

    def test_count_equals_dimension(self, parts_2ll):
        vals = vx.dense_spectrum(parts_2ll, 0.8, 0.5, 0.03)
        assert vals.shape == (parts_2ll.dimension,)

    def test_dimension_cap(self, parts_2ll):
        with pytest.raises(DimensionTooLargeError):
            vx.dense_spectrum(parts_2ll, 0.8, 0.5, 0.03, dense_cap=10)

    def test_blockwise_union_when_isotropic(self, lll_basis_small):
        basis = lll_basis_small
        parts = vx.assemble(basis, vx.build_tables(list(basis.modes)))
        full = np.sort(vx.dense_spectrum(parts, 0.6, 0.7, 0.0))
        h = vx.combine_dense(parts, 0.6, 0.7, 0.0)
        lv = np.asarray(basis.l_values)
        per_block = []
        for L in sorted(set(lv.tolist())):
            sel = np.flatnonzero(lv == L)
            per_block.append(np.linalg.eigvalsh(h[np.ix_(sel, sel)]))
        assert np.allclose(np.sort(np.concatenate(per_block)), full, atol=1e-10)
