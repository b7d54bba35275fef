"""Single-particle and two-body matrix elements against grid-integration oracles."""
import math

import numpy as np
import pytest

import vortexed as vx
from vortexed.basis import SpMode, enumerate_modes
from vortexed.matelems import (
    ZERO_THRESHOLD,
    anisotropy_element,
    build_tables,
    interaction_element,
    lll_interaction_element,
    radial_wavefunction,
)

from oracles import grid_interaction, grid_quadrupole


def M(n, m):
    return SpMode(n=n, m=m)


class TestRadialWavefunction:
    def test_origin_values(self):
        assert radial_wavefunction(M(0, 0), 0.0) == pytest.approx(1 / math.sqrt(math.pi))
        assert radial_wavefunction(M(0, 1), 0.0) == 0.0

    def test_node_of_n1(self):
        # n=1, m=0 radial factor 1 - r^2 crosses zero at r = 1
        assert radial_wavefunction(M(1, 0), 1.0) == pytest.approx(0.0, abs=1e-14)
        assert radial_wavefunction(M(1, 0), 0.9) * radial_wavefunction(M(1, 0), 1.1) < 0

    def test_normalization(self):
        # int R^2 r dr = 1/(2 pi); the e^{im theta} factor carries the rest
        r = np.linspace(0.0, 12.0, 40001)
        for mode in (M(0, 0), M(0, 3), M(1, 1), M(2, 0)):
            val = np.trapezoid(radial_wavefunction(mode, r) ** 2 * r, r)
            assert val == pytest.approx(1 / (2 * math.pi), rel=1e-7)


class TestInteractionElement:
    def test_all_ground(self):
        assert interaction_element(M(0, 0), M(0, 0), M(0, 0), M(0, 0)) == \
            pytest.approx(1 / (2 * math.pi), abs=1e-14)

    def test_lll_closed_form_example(self):
        got = interaction_element(M(0, 1), M(0, 1), M(0, 0), M(0, 2))
        want = (1 / (2 * math.pi)) * math.factorial(2) / (2 ** 2 * math.sqrt(2))
        assert got == pytest.approx(want, abs=1e-14)
        assert got == pytest.approx(0.056270, abs=5e-7)

    def test_selection_rule(self):
        assert interaction_element(M(0, 0), M(0, 1), M(0, 0), M(0, 0)) == 0.0
        assert interaction_element(M(0, 2), M(0, 0), M(0, 1), M(0, 0)) == 0.0

    def test_lll_closed_form_matches_general_path(self):
        modes = enumerate_modes(1, 5)
        for k in modes:
            for l in modes:
                for p in modes:
                    for q in modes:
                        if k.m + l.m != p.m + q.m:
                            continue
                        assert interaction_element(k, l, p, q) == pytest.approx(
                            lll_interaction_element(k, l, p, q), abs=1e-13)

    def test_against_grid_oracle(self, rng):
        modes = enumerate_modes(3, 4)
        quads = []
        while len(quads) < 12:
            k, l, p, q = (modes[i] for i in rng.integers(0, len(modes), 4))
            if k.m + l.m == p.m + q.m:
                quads.append((k, l, p, q))
        for k, l, p, q in quads:
            assert interaction_element(k, l, p, q) == pytest.approx(
                grid_interaction(k, l, p, q), abs=1e-8)

    def test_symmetries(self, rng):
        modes = enumerate_modes(2, 4)
        for _ in range(25):
            k, l, p, q = (modes[i] for i in rng.integers(0, len(modes), 4))
            v = interaction_element(k, l, p, q)
            # swaps recompute the quadrature in a different product order,
            # so agreement is to the last ulp, not bitwise
            assert v == pytest.approx(interaction_element(l, k, q, p), abs=1e-13)
            assert v == pytest.approx(interaction_element(p, q, k, l), abs=1e-13)
            assert v == pytest.approx(interaction_element(k, l, q, p), abs=1e-13)


class TestAnisotropyElement:
    def test_pinned_value(self):
        assert anisotropy_element(M(0, 0), M(0, 2)) == pytest.approx(1 / math.sqrt(2), abs=1e-14)

    def test_selection_rule(self):
        assert anisotropy_element(M(0, 0), M(0, 1)) == 0.0
        assert anisotropy_element(M(0, 1), M(0, 1)) == 0.0

    def test_symmetric(self, rng):
        modes = enumerate_modes(3, 4)
        for _ in range(20):
            k, p = (modes[i] for i in rng.integers(0, len(modes), 2))
            assert anisotropy_element(k, p) == pytest.approx(anisotropy_element(p, k), abs=1e-13)

    def test_against_grid_oracle(self, rng):
        modes = enumerate_modes(3, 4)
        checked = 0
        for k in modes:
            for p in modes:
                if p.m != k.m + 2:
                    continue
                assert anisotropy_element(k, p) == pytest.approx(
                    grid_quadrupole(k, p), abs=1e-8)
                checked += 1
        assert checked >= 6


class TestTables:
    def test_single_mode(self):
        it, at = build_tables([M(0, 0)])
        assert len(it.entries) == 1
        assert len(at.entries) == 0

    def test_lookup_matches_recomputation(self, rng):
        modes = enumerate_modes(2, 4)
        it, at = build_tables(modes)
        entries = list(it.entries.items())
        for j in rng.integers(0, len(entries), min(100, len(entries))):
            (k, l, p, q), val = entries[j]
            assert val == pytest.approx(interaction_element(k, l, p, q), abs=1e-13)
            assert it.element(k, l, p, q) == val

    def test_table_contains_only_m_conserving(self):
        modes = enumerate_modes(1, 2)
        it, _ = build_tables(modes)
        for (k, l, p, q) in it.entries:
            assert k.m + l.m == p.m + q.m

    def test_anisotropy_entries_are_dm2(self):
        modes = enumerate_modes(2, 3)
        _, at = build_tables(modes)
        assert len(at.entries) > 0
        for (k, p) in at.entries:
            assert abs(p.m - k.m) == 2

    def test_zero_threshold(self):
        assert ZERO_THRESHOLD == 1e-14


def test_quadrature_is_converged(monkeypatch):
    # doubling the rule order must not move any element
    from vortexed import matelems
    cases = [(M(2, 1), M(1, 2), M(2, 2), M(1, 1)),
             (M(0, 4), M(0, 0), M(0, 2), M(0, 2)),
             (M(1, 0), M(1, 0), M(0, 0), M(2, 0))]
    base = [interaction_element(*c) for c in cases]
    base_w = anisotropy_element(M(1, 1), M(1, 3))
    orig = matelems._quad_order
    monkeypatch.setattr(matelems, "_quad_order", lambda d: 2 * orig(d))
    for c, b in zip(cases, base):
        assert abs(interaction_element(*c) - b) <= 1e-12
    assert abs(anisotropy_element(M(1, 1), M(1, 3)) - base_w) <= 1e-12
