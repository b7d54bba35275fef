"""Parameter studies: rotation sweeps, critical-frequency location, QFI
resonance width, truncation comparisons, and isotropic per-L spectra.

A :class:`SweepEngine` owns everything that is independent of (omega, g, A)
for one truncation: basis, matrix-element tables, assembled Hamiltonian
pieces, and the annihilation ladder for observables.  Every study below is
a thin driver over ``engine.point``.

Root finding happens on the signed occupation split

    s(omega) = lambda_top(even parity) - lambda_top(odd parity),

which crosses zero exactly where the two leading natural-orbital
occupations swap; sorting occupations first would fold the sign and leave a
kink at the root.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .basis import BasisSpec, build_basis, DIMENSION_CAP
from .eigensolver import krylov_lowest, lowest_eigenpairs
from .errors import NoCrossingError
from .hamiltonian import assemble
from .matelems import build_tables
from .observables import (
    AnnihilationLadder,
    MetrologyReport,
    leading_pair,
    natural_orbitals,
    qfi,
    spdm,
    two_mode_decompose,
)

CSV_HEADER = "omega,g,A,n_ll,l_min,l_max,e0,gap,lam1,lam2,lam3,fidelity,fq,dphi"

DEFAULT_SWEEP_STEPS = 200
OMEGA_C_XTOL = 1e-10  # s(omega) is steep near sharp resonances; see find_critical
WIDTH_XTOL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Physical and truncation parameters of one model instance.

    ``l_min``/``l_max`` may be left unset; :meth:`resolved` fills the
    defaults (l_max = N + 4, and l_min = 0 for the lowest level only, else
    -2 so one anisotropy step below zero stays inside the window).
    """

    n: int
    g: float
    a: float
    n_ll: int = 1
    l_min: int | None = None
    l_max: int | None = None

    def resolved(self) -> "ModelParams":
        l_max = self.l_max if self.l_max is not None else self.n + 4
        l_min = self.l_min
        if l_min is None:
            l_min = 0 if self.n_ll == 1 else -2
        return replace(self, l_min=l_min, l_max=l_max)

    def basis_spec(self) -> BasisSpec:
        p = self.resolved()
        return BasisSpec(n=p.n, n_ll=p.n_ll, l_min=p.l_min, l_max=p.l_max)


@dataclass
class SweepPoint:
    """One row of a sweep: energies, occupations, metrology numbers."""

    omega: float
    g: float
    a: float
    n_ll: int
    l_min: int
    l_max: int
    e0: float
    gap: float
    lam1: float
    lam2: float
    lam3: float
    fidelity: float
    fq: float
    dphi: float
    ok: bool = True
    error: str = ""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def csv_row(pt: SweepPoint) -> str:
    return ",".join([
        _fmt(pt.omega), _fmt(pt.g), _fmt(pt.a),
        str(pt.n_ll), str(pt.l_min), str(pt.l_max),
        _fmt(pt.e0), _fmt(pt.gap),
        _fmt(pt.lam1), _fmt(pt.lam2), _fmt(pt.lam3),
        _fmt(pt.fidelity), _fmt(pt.fq), _fmt(pt.dphi),
    ])


class SweepEngine:
    """Reusable solver context for one basis truncation.

    g and A enter only at matvec time, so a single engine serves sweeps
    over omega, g and A alike.  Ground vectors are cached per
    (omega, g, A) and reused as warm starts for nearby omega.
    """

    def __init__(self, params: ModelParams, k: int = 4, tol: float = 1e-10,
                 seed: int = 1, dimension_cap: int = DIMENSION_CAP,
                 ll_budget: int | None = None):
        self.params = params.resolved()
        self.k = max(2, k)
        self.tol = tol
        self.seed = seed
        self.basis = build_basis(self.params.basis_spec(),
                                 dimension_cap=dimension_cap,
                                 ll_budget=ll_budget)
        self.tables = build_tables(self.basis.modes)
        self.parts = assemble(self.basis, self.tables)
        self.ladder = AnnihilationLadder(self.basis)
        self._cache: dict[tuple[float, float, float], np.ndarray] = {}

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    def _nearest_start(self, omega: float, g: float, a: float) -> np.ndarray | None:
        best = None
        best_d = math.inf
        for (w, gg, aa), vec in self._cache.items():
            if gg != g or aa != a:
                continue
            d = abs(w - omega)
            if d < best_d or (d == best_d and best is not None and w < best[0][0]):
                best_d = d
                best = ((w, gg, aa), vec)
        return None if best is None else best[1]

    def solve(self, omega: float, g: float | None = None, a: float | None = None,
              start_vector: np.ndarray | None = None, cache: bool = True):
        g = self.params.g if g is None else g
        a = self.params.a if a is None else a
        if start_vector is None:
            start_vector = self._nearest_start(omega, g, a)
        res = lowest_eigenpairs(self.parts, omega, g, a, k=self.k,
                                tol=self.tol, seed=self.seed,
                                start_vector=start_vector)
        if cache:
            self._cache[(omega, g, a)] = res.eigenvectors[:, 0].copy()
        return res

    def occupation_split(self, omega: float, g: float | None = None,
                         a: float | None = None) -> float:
        """Signed s(omega): top even-parity minus top odd-parity occupation."""
        res = self.solve(omega, g, a)
        psi = res.eigenvectors[:, 0]
        psi = psi / np.linalg.norm(psi)
        orbs = natural_orbitals(spdm(psi, self.basis, self.ladder))
        even = orbs.occupations[orbs.parities == 1]
        odd = orbs.occupations[orbs.parities == -1]
        top_even = float(even[0]) if even.size else 0.0
        top_odd = float(odd[0]) if odd.size else 0.0
        return top_even - top_odd

    def point(self, omega: float, g: float | None = None, a: float | None = None,
              start_vector: np.ndarray | None = None, cache: bool = True,
              with_report: bool = False):
        """Full SweepPoint (optionally plus MetrologyReport) at one omega."""
        p = self.params
        gv = p.g if g is None else g
        av = p.a if a is None else a
        res = self.solve(omega, gv, av, start_vector=start_vector, cache=cache)
        return self._point_from_result(omega, gv, av, res, with_report)

    def _point_from_result(self, omega: float, gv: float, av: float, res,
                           with_report: bool = False):
        p = self.params
        e0 = float(res.eigenvalues[0])
        gap = float(res.eigenvalues[1] - e0) if res.eigenvalues.size > 1 else math.nan
        psi = res.eigenvectors[:, 0]
        psi = psi / np.linalg.norm(psi)

        orbs = natural_orbitals(spdm(psi, self.basis, self.ladder))
        lams = [float(orbs.occupations[i]) if i < orbs.occupations.size else 0.0
                for i in range(3)]
        psi1, psi2 = leading_pair(orbs, p.n)
        q = qfi(psi, self.basis, psi1, ladder=self.ladder, check=False)
        if p.n % 2 == 0:
            tm = two_mode_decompose(psi, self.basis, (psi1, psi2), ladder=self.ladder)
            fidelity = tm.fidelity
        else:
            tm = None
            fidelity = math.nan
        pt = SweepPoint(
            omega=omega, g=gv, a=av, n_ll=p.n_ll, l_min=p.l_min, l_max=p.l_max,
            e0=e0, gap=gap, lam1=lams[0], lam2=lams[1], lam3=lams[2],
            fidelity=fidelity, fq=q.f_q, dphi=q.dphi_bound,
        )
        if not with_report:
            return pt
        report = MetrologyReport(
            omega=omega,
            occupations=orbs.occupations.copy(),
            c_n=tm.c_n.copy() if tm is not None else np.array([]),
            p_n=tm.p_n.copy() if tm is not None else np.array([]),
            fidelity=fidelity,
            odd_weight=tm.odd_weight if tm is not None else math.nan,
            f_q=q.f_q,
            dphi_bound=q.dphi_bound,
            mean_n1=q.mean_n1,
        )
        return pt, report

    def _failed_point(self, omega: float, g: float, a: float, err: str) -> SweepPoint:
        p = self.params
        nan = math.nan
        return SweepPoint(omega=omega, g=g, a=a, n_ll=p.n_ll,
                          l_min=p.l_min, l_max=p.l_max,
                          e0=nan, gap=nan, lam1=nan, lam2=nan, lam3=nan,
                          fidelity=nan, fq=nan, dphi=nan, ok=False, error=err)


def sweep_omega(engine: SweepEngine, omega_lo: float, omega_hi: float,
                steps: int = DEFAULT_SWEEP_STEPS, g: float | None = None,
                a: float | None = None, threads: int = 1) -> list[SweepPoint]:
    """One SweepPoint per grid value of omega in [omega_lo, omega_hi].

    Points are solved in omega order with warm starts chained along the
    grid.  With ``threads`` > 1 the grid is cut into contiguous chunks, one
    warm-start chain per chunk (cold start at each chunk head), so results
    are deterministic for a fixed (config, seed, threads) triple.  A solver
    failure marks its point (``ok = False``, NaN payload) and the sweep
    continues.
    """
    if not (0.0 <= omega_lo < omega_hi < 1.0):
        raise ValueError(
            f"need 0 <= omega_lo < omega_hi < 1, got [{omega_lo}, {omega_hi}]")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    gv = engine.params.g if g is None else g
    av = engine.params.a if a is None else a
    omegas = np.linspace(omega_lo, omega_hi, steps)

    def run_chain(chunk: np.ndarray) -> list[SweepPoint]:
        out: list[SweepPoint] = []
        warm: np.ndarray | None = None
        for w in chunk:
            try:
                res = engine.solve(float(w), gv, av, start_vector=warm, cache=False)
                warm = res.eigenvectors[:, 0].copy()
                pt = engine._point_from_result(float(w), gv, av, res)
            except Exception as exc:  # flag the point, keep sweeping
                warm = None
                pt = engine._failed_point(float(w), gv, av, repr(exc))
            out.append(pt)
        return out

    threads = max(1, int(threads))
    if threads == 1:
        return run_chain(omegas)
    chunks = np.array_split(omegas, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(run_chain, chunks))
    return [pt for chunk in parts for pt in chunk]


@dataclass
class CriticalPoint:
    """Location of the occupation crossing lambda_1 = lambda_2."""

    omega_c: float
    bracket: tuple[float, float]
    residual: float  # |lambda_1 - lambda_2| at omega_c
    point: SweepPoint


def find_critical(engine: SweepEngine, omega_lo: float, omega_hi: float,
                  g: float | None = None, a: float | None = None,
                  coarse_steps: int = 24,
                  xtol: float = OMEGA_C_XTOL) -> CriticalPoint:
    """Root of the signed occupation split inside [omega_lo, omega_hi].

    A coarse scan brackets the first sign change, then brentq refines it.
    xtol is kept far below the requested 1e-6 absolute accuracy because
    near-N00N resonances make s(omega) steep: the occupation residual at
    the root scales like slope * xtol.
    """
    if not (0.0 <= omega_lo < omega_hi < 1.0):
        raise ValueError(
            f"need 0 <= omega_lo < omega_hi < 1, got [{omega_lo}, {omega_hi}]")

    def s(w: float) -> float:
        return engine.occupation_split(w, g, a)

    grid = np.linspace(omega_lo, omega_hi, coarse_steps)
    vals = [s(float(w)) for w in grid]
    lo = hi = None
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            lo = hi = float(grid[i])
            break
        if vals[i] * vals[i + 1] < 0.0:
            lo, hi = float(grid[i]), float(grid[i + 1])
            break
    else:
        if vals[-1] == 0.0:
            lo = hi = float(grid[-1])
    if lo is None:
        raise NoCrossingError(
            f"occupation split does not change sign on [{omega_lo}, {omega_hi}] "
            f"(s ranges {min(vals):.3g} to {max(vals):.3g})")

    omega_c = lo if lo == hi else float(brentq(s, lo, hi, xtol=xtol))
    pt = engine.point(omega_c, g, a)
    residual = abs(pt.lam1 - pt.lam2)
    n = engine.params.n
    if residual > 1e-6 * n:
        warnings.warn(
            f"occupation residual {residual:.3e} at omega_c={omega_c} exceeds "
            f"1e-6*N = {1e-6 * n:.1e}; crossing sharper than xtol resolves",
            RuntimeWarning, stacklevel=2)
    return CriticalPoint(omega_c=omega_c, bracket=(lo, hi), residual=residual,
                         point=pt)


@dataclass
class WidthResult:
    """Left half-maximum width of the QFI resonance."""

    omega_c: float
    f_peak: float
    omega_half: float
    width: float
    bracket: tuple[float, float]
    max_seen: float


def qfi_width(engine: SweepEngine | None, omega_c: float,
              g: float | None = None, a: float | None = None,
              fq_eval=None, initial_step: float = 1e-5,
              omega_floor: float = 0.0,
              xtol: float = WIDTH_XTOL) -> WidthResult:
    """omega_c - omega_half, scanning left until F_Q falls to half its peak.

    The step doubles until the half level is bracketed, then brentq
    refines; this resolves widths from ~1e-6 up to the whole scan range.
    ``fq_eval`` can replace the engine evaluation (used to validate the
    bracketing logic on closed-form profiles).  If some scanned F_Q exceeds
    the value at omega_c by more than 1%, a peak-not-at-omega_c warning is
    emitted.
    """
    if fq_eval is None:
        if engine is None:
            raise ValueError("need an engine or an fq_eval callable")
        def fq_eval(w: float) -> float:
            return engine.point(w, g, a).fq

    f_peak = float(fq_eval(omega_c))
    if not (f_peak > 0):
        raise NoCrossingError(f"F_Q at omega_c is {f_peak}; no resonance to measure")
    half = 0.5 * f_peak
    max_seen = f_peak

    step = initial_step
    above = omega_c  # rightmost scanned point still above half level
    while True:
        w = omega_c - step
        if w <= omega_floor:
            raise NoCrossingError(
                f"F_Q stays above half maximum down to omega={omega_floor}")
        f = float(fq_eval(w))
        max_seen = max(max_seen, f)
        if f < half:
            lo, hi = w, above
            break
        above = w
        step *= 2.0

    omega_half = float(brentq(lambda w: float(fq_eval(w)) - half, lo, hi, xtol=xtol))
    if max_seen > 1.01 * f_peak:
        warnings.warn(
            f"F_Q reaches {max_seen:.6g} on the scan, above F_Q(omega_c) = "
            f"{f_peak:.6g}: peak is not at omega_c", RuntimeWarning, stacklevel=2)
    return WidthResult(omega_c=omega_c, f_peak=f_peak, omega_half=omega_half,
                       width=omega_c - omega_half, bracket=(lo, hi),
                       max_seen=max_seen)


@dataclass
class TruncationComparison:
    """Fractional shifts between two Landau-level truncations."""

    n_ll_a: int
    n_ll_b: int
    omega_c_a: float
    omega_c_b: float
    frac_omega: float  # |omega_c(b) - omega_c(a)| / omega_c(a)
    fq_a: float        # F_Q of truncation a at omega_c(a)
    fq_b: float        # F_Q of truncation b at omega_c(a)
    frac_fq: float     # |fq_b - fq_a| / fq_b

    def to_dict(self) -> dict:
        return {
            "n_ll_a": self.n_ll_a, "n_ll_b": self.n_ll_b,
            "omega_c_a": self.omega_c_a, "omega_c_b": self.omega_c_b,
            "frac_omega": self.frac_omega,
            "fq_a": self.fq_a, "fq_b": self.fq_b, "frac_fq": self.frac_fq,
        }


def compare_truncations(params: ModelParams, n_ll_a: int, n_ll_b: int,
                        omega_lo: float, omega_hi: float,
                        k: int = 4, tol: float = 1e-10, seed: int = 1,
                        engines: tuple[SweepEngine, SweepEngine] | None = None
                        ) -> TruncationComparison:
    """Critical-frequency and QFI shifts from truncation a to b (a <= b).

    Both QFI values are taken at omega_c of the coarser truncation, and the
    fractional QFI change is normalized by the finer-truncation value
    (which is the better estimate of the truth there).  Identical
    truncations short-circuit to exact zeros.
    """
    if n_ll_a > n_ll_b:
        raise ValueError(f"need n_ll_a <= n_ll_b, got {n_ll_a} > {n_ll_b}")
    pa = replace(params, n_ll=n_ll_a)
    pb = replace(params, n_ll=n_ll_b)
    if engines is not None:
        eng_a, eng_b = engines
    else:
        eng_a = SweepEngine(pa, k=k, tol=tol, seed=seed)
        eng_b = None
    crit_a = find_critical(eng_a, omega_lo, omega_hi)
    fq_a = crit_a.point.fq
    if n_ll_a == n_ll_b and pa.resolved() == pb.resolved():
        return TruncationComparison(
            n_ll_a=n_ll_a, n_ll_b=n_ll_b,
            omega_c_a=crit_a.omega_c, omega_c_b=crit_a.omega_c,
            frac_omega=0.0, fq_a=fq_a, fq_b=fq_a, frac_fq=0.0)
    if eng_b is None:
        eng_b = SweepEngine(pb, k=k, tol=tol, seed=seed)
    crit_b = find_critical(eng_b, omega_lo, omega_hi)
    fq_b = eng_b.point(crit_a.omega_c).fq
    return TruncationComparison(
        n_ll_a=n_ll_a, n_ll_b=n_ll_b,
        omega_c_a=crit_a.omega_c, omega_c_b=crit_b.omega_c,
        frac_omega=abs(crit_b.omega_c - crit_a.omega_c) / crit_a.omega_c,
        fq_a=fq_a, fq_b=fq_b,
        frac_fq=abs(fq_b - fq_a) / fq_b)


@dataclass
class PerLSpectrum:
    """Lowest eigenvalue of each L block of the isotropic Hamiltonian.

    ``e0_values`` are taken at omega = 0; since L_z is a good quantum
    number here, E0(L, omega) = e0_values[L] - omega * L exactly.
    """

    l_values: np.ndarray
    e0_values: np.ndarray
    omega_1: float  # frequency where the L=0 and L=N lowest levels cross

    def energy(self, l: int, omega: float) -> float:
        i = int(np.searchsorted(self.l_values, l))
        if i >= self.l_values.size or self.l_values[i] != l:
            raise ValueError(f"no L = {l} block in this spectrum")
        return float(self.e0_values[i] - omega * l)

    def degeneracy_spread(self, omega: float, ls=None) -> float:
        """max - min of E0(L, omega) over the chosen L values."""
        if ls is None:
            ls = [int(l) for l in self.l_values]
        vals = [self.energy(l, omega) for l in ls]
        return float(max(vals) - min(vals))


def isotropic_spectrum_per_l(params: ModelParams, k: int = 1,
                             tol: float = 1e-10, seed: int = 1,
                             dense_cap: int = 4000) -> PerLSpectrum:
    """Per-L ground energies of the A = 0 Hamiltonian, plus omega_1.

    Each L block is solved independently (dense below ``dense_cap``,
    Krylov above).  omega_1 = (E0(L=N) - E0(L=0)) / N is where the global
    ground state first jumps from the L = 0 condensate to L = N.
    """
    if params.a != 0.0:
        raise ValueError(f"per-L spectra need A = 0, got A = {params.a}")
    p = params.resolved()
    basis = build_basis(p.basis_spec())
    tables = build_tables(basis.modes)
    parts = assemble(basis, tables)

    l_values = []
    e0_values = []
    for l in sorted(basis.blocks):
        start, stop = basis.blocks[l]
        nblk = stop - start
        if nblk == 0:
            continue
        h0 = parts.h0[start:stop]
        vblk = parts.v[start:stop, start:stop]
        if nblk <= dense_cap:
            hd = np.diag(h0) + p.g * vblk.toarray()
            e0 = float(np.linalg.eigvalsh(hd)[0])
        else:
            def apply_blk(x, h0=h0, vblk=vblk):
                return h0 * x + p.g * (vblk @ x)
            res = krylov_lowest(apply_blk, nblk, k=1, tol=tol, seed=seed)
            e0 = float(res.eigenvalues[0])
        l_values.append(l)
        e0_values.append(e0)

    l_arr = np.array(l_values, dtype=np.int64)
    e_arr = np.array(e0_values)
    if 0 in l_values and p.n in l_values:
        e_0 = e_arr[l_arr == 0][0]
        e_n = e_arr[l_arr == p.n][0]
        omega_1 = float((e_n - e_0) / p.n)
    else:
        omega_1 = math.nan
    return PerLSpectrum(l_values=l_arr, e0_values=e_arr, omega_1=omega_1)


@dataclass
class LmaxConvergence:
    """Shift of omega_c when the L window is widened by ``delta``."""

    l_max: int
    l_max_extended: int
    omega_c: float
    omega_c_extended: float
    delta_omega: float


def lmax_convergence(params: ModelParams, omega_lo: float, omega_hi: float,
                     delta: int = 2, k: int = 4, tol: float = 1e-10,
                     seed: int = 1) -> LmaxConvergence:
    """Compare omega_c at l_max and l_max + delta (window-convergence check)."""
    p = params.resolved()
    base = SweepEngine(p, k=k, tol=tol, seed=seed)
    ext = SweepEngine(replace(p, l_max=p.l_max + delta), k=k, tol=tol, seed=seed)
    crit_base = find_critical(base, omega_lo, omega_hi)
    crit_ext = find_critical(ext, omega_lo, omega_hi)
    return LmaxConvergence(
        l_max=p.l_max, l_max_extended=p.l_max + delta,
        omega_c=crit_base.omega_c, omega_c_extended=crit_ext.omega_c,
        delta_omega=abs(crit_ext.omega_c - crit_base.omega_c))


@dataclass
class ValidityReport:
    """Advisory weak-interaction / truncation-validity indicators.

    ``lll_ratio`` compares N*g against 2*pi/(1 - omega); ``g_over_feder``
    compares g against the empirical single-level breakdown coupling
    6.92 * N^(-1.046).  Neither gates any computation.
    """

    ng: float
    lll_bound: float
    lll_ratio: float
    feder_gmax: float
    g_over_feder: float

    def to_dict(self) -> dict:
        return {
            "ng": self.ng, "lll_bound": self.lll_bound,
            "lll_ratio": self.lll_ratio, "feder_gmax": self.feder_gmax,
            "g_over_feder": self.g_over_feder,
        }


def validity_diagnostics(params: ModelParams, omega: float) -> ValidityReport:
    ng = params.n * params.g
    bound = 2.0 * math.pi / (1.0 - omega) if omega < 1.0 else math.inf
    feder = 6.92 * params.n ** (-1.046)
    return ValidityReport(
        ng=ng, lll_bound=bound,
        lll_ratio=ng / bound if math.isfinite(bound) else 0.0,
        feder_gmax=feder, g_over_feder=params.g / feder)
