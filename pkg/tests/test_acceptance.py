"""Acceptance criteria, each at its stated tolerance.

A summary line per criterion is printed at the end of the run.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from shifted_hulthen import cli, golden
from shifted_hulthen.core import NATURAL, PotentialParams, StateIndex, to_dimensionless
from shifted_hulthen.nu_method import quantize
from shifted_hulthen.oracle import EXACT, CentrifugalMode, numerov_refine, run_oracle, solve_levels
from shifted_hulthen.potentials import ALL_SCHEMES, SCHEME1, ApproximationScheme, SchemeTag
from shifted_hulthen.spectrum import (
    effective_params,
    energy,
    energy_hulthen,
    energy_woods_saxon,
    epsilon_closed_form,
    hulthen_params,
    woods_saxon_params,
)
from shifted_hulthen.wavefunction import (
    build_wavefunction,
    count_sign_changes,
    eval_radial,
    jacobi_eval,
    JacobiParams,
    node_count,
)
from test_wavefunction import jacobi_series, square_integral

TOL = cli.TABLE_TOL
BAR = cli.PASS_BAR


def acceptance(cid, title):
    return pytest.mark.acceptance(cid, title)


def table_params(table, alpha):
    fixed = golden.FIXED[table]
    return PotentialParams(fixed["v0"], fixed["v1"], alpha=alpha, q=fixed["q"])


def cell_energy(cell, reading="printed"):
    scheme = ApproximationScheme(SchemeTag(cell.scheme), eq4_reading=reading)
    return energy(table_params(cell.table, cell.alpha), NATURAL, StateIndex(cell.n, cell.l), scheme).energy


def anchor(table, n, l, scheme, alpha=0.025):
    cell = next(c for c in golden.load_table(table) if (c.n, c.l, c.scheme, c.alpha) == (n, l, scheme, alpha))
    return cell_energy(cell)


# 1


@acceptance("AC1", "Table 1 reproduction (1e-6 abs, >= 95% of cells, < 1 s)")
def test_ac1_table1(ac_detail):
    t0 = time.perf_counter()
    cells = golden.load_table(1)
    diffs = [abs(cell_energy(c) - c.value) for c in cells]
    elapsed = time.perf_counter() - t0
    rate = sum(d <= TOL for d in diffs) / len(diffs)
    ac_detail.append(f"{len(cells)} cells, pass rate {rate:.1%}, max diff {max(diffs):.2g}, {elapsed * 1e3:.0f} ms")
    matches = []
    for reading in ("printed", "corrected"):
        worst = max(abs(cell_energy(c, reading) - c.value) for c in cells)
        if worst <= TOL:
            matches.append(reading)
    ac_detail.append(f"scheme-2 barrier reading matching the table: {', '.join(matches) or 'none'}")
    assert rate >= BAR
    assert abs(anchor(1, 0, 1, 1) - (-3.117514261)) <= TOL
    assert abs(anchor(1, 3, 4, 2, 0.075) - (-3.021196724)) <= TOL
    assert elapsed < 1.0


# 2


@acceptance("AC2", "Tables 2 and 3 reproduction (1e-6 abs, >= 95% of cells)")
@pytest.mark.parametrize("table", [2, 3])
def test_ac2_tables(table, ac_detail):
    cells = golden.load_table(table)
    diffs = [abs(cell_energy(c) - c.value) for c in cells]
    rate = sum(d <= TOL for d in diffs) / len(diffs)
    ac_detail.append(f"table {table}: {len(cells)} cells, pass rate {rate:.1%}, max diff {max(diffs):.2g}")
    assert rate >= BAR
    if table == 2:
        assert abs(anchor(2, 0, 1, 2) - (-3.07900825)) <= TOL
    else:
        assert abs(anchor(3, 0, 4, 1) - (-3.043909145)) <= TOL


# 3


@acceptance("AC3", "s-wave scheme collapse (<= 1e-12)")
@pytest.mark.parametrize("alpha", [0.025, 0.05, 0.075])
def test_ac3_s_wave_collapse(alpha):
    p = table_params(1, alpha)
    for n in range(4):
        es = [energy(p, NATURAL, StateIndex(n, 0, 3), sch).energy for sch in ALL_SCHEMES]
        for i in range(3):
            for j in range(i + 1, 3):
                assert abs(es[i] - es[j]) <= 1e-12


# 4


@acceptance("AC4", "Hulthen and Woods-Saxon special-case identities (<= 1e-12)")
@pytest.mark.parametrize("v0, alpha", [(2.0, 0.5), (0.5, 0.3)])
def test_ac4_special_cases(v0, alpha, ac_detail):
    worst = 0.0
    for scheme in ALL_SCHEMES:
        for n in range(6):
            for l in range(6):
                for d in (1, 3, 5):
                    s = StateIndex(n, l, d)
                    for special, general in (
                        (energy_hulthen(scheme, v0, alpha, NATURAL, s), energy(hulthen_params(v0, alpha), NATURAL, s, scheme)),
                        (energy_woods_saxon(scheme, v0, alpha, NATURAL, s), energy(woods_saxon_params(v0, alpha), NATURAL, s, scheme)),
                    ):
                        assert special.status.tag is general.status.tag
                        if special.energy is not None:
                            err = abs(special.energy - general.energy)
                            worst = max(worst, err)
                            assert err <= 1e-12
    ac_detail.append(f"V0={v0}, alpha={alpha}: max difference {worst:.2g}")


# 5


def random_bound_tuples(count, seed=20240611):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        q = float(rng.choice([rng.uniform(0.3, 3.0), rng.uniform(-3.0, -0.3), 1.0]))
        p = PotentialParams(rng.uniform(-10.0, 2.0), rng.uniform(-0.5, 1.0), alpha=rng.uniform(0.05, 1.0), q=q)
        s = StateIndex(int(rng.integers(0, 5)), int(rng.integers(0, 5)), int(rng.choice([2, 3, 4, 5])))
        scheme = ALL_SCHEMES[int(rng.integers(0, 3))]
        if energy(p, NATURAL, s, scheme).is_bound:
            out.append((p, s, scheme))
    return out


@acceptance("AC5", "NU engine equals the closed form (<= 1e-10 rel, >= 100 Bound tuples, < 10 s)")
def test_ac5_nu_equivalence(ac_detail):
    tuples = random_bound_tuples(150)
    t0 = time.perf_counter()
    worst = 0.0
    for p, s, scheme in tuples:
        eff = effective_params(to_dimensionless(p, NATURAL, s), scheme, p.alpha)
        ref = epsilon_closed_form(eff, p.q, s.n)
        got = quantize(eff, p.q, s.n)
        rel = abs(got - ref) / abs(ref)
        worst = max(worst, rel)
    elapsed = time.perf_counter() - t0
    ac_detail.append(f"{len(tuples)} tuples, max rel diff {worst:.2g}, {elapsed:.2f} s")
    assert len(tuples) >= 100
    assert worst <= 1e-10
    assert elapsed < 10.0


# 6


@acceptance("AC6", "FD Approximated-mode oracle reproduces the closed form on the Table 1 grid (5e-6, delta < 1e-6, < 2 min)")
def test_ac6_algebra_validation_table1(ac_detail):
    cells = golden.load_table(1)
    keys = sorted({(c.l, c.alpha) for c in cells})
    t0 = time.perf_counter()
    worst_err = worst_delta = 0.0
    lowest = math.inf
    for l, alpha in keys:
        levels = max(c.n for c in cells if (c.l, c.alpha) == (l, alpha)) + 1
        for scheme in ALL_SCHEMES:
            rep = run_oracle(table_params(1, alpha), NATURAL, l, 3, CentrifugalMode.approximated(scheme), levels)
            worst_err = max(worst_err, rep.max_abs_error)
            worst_delta = max(worst_delta, max(abs(d) for d in rep.convergence_delta))
            lowest = min(lowest, min(rep.energies))
    elapsed = time.perf_counter() - t0
    ac_detail.append(
        f"max |closed - FD| {worst_err:.3g}, max delta {worst_delta:.2g}, lowest FD level {lowest:.3g}, {elapsed:.1f} s"
    )
    assert worst_delta < 1e-6
    assert elapsed < 120.0
    assert worst_err <= 5e-6


# 7


@acceptance("AC7", "s-wave Hulthen oracle exactness (FD 5e-6, Numerov 1e-8)")
def test_ac7_hulthen(ac_detail):
    v0, alpha = 5.0, 0.05
    p = hulthen_params(v0, alpha)
    rep = run_oracle(p, NATURAL, 0, 3, EXACT, 3)
    for n, fd in enumerate(rep.energies):
        exact = energy_hulthen(SCHEME1, v0, alpha, NATURAL, StateIndex(n, 0)).energy
        e_num = numerov_refine(p, NATURAL, StateIndex(n, 0), EXACT, (fd * 1.001, fd * 0.999))
        ac_detail.append(f"n={n}: FD err {abs(fd - exact):.2g}, Numerov err {abs(e_num - exact):.2g}")
        assert abs(fd - exact) <= 5e-6
        assert abs(e_num - exact) <= 1e-8


# 8


@acceptance("AC8", "closed-form vs exact-mode gap shrinks as alpha decreases (n=0, l=4, q=1)")
def test_ac8_monotone_gap(ac_detail):
    s = StateIndex(0, 4)
    alphas = (0.075, 0.05, 0.025)
    fd = {a: solve_levels(table_params(1, a), NATURAL, s, EXACT, doublings=2).richardson[0] for a in alphas}
    ok = True
    for scheme in ALL_SCHEMES:
        gaps = [abs(energy(table_params(1, a), NATURAL, s, scheme).energy - fd[a]) for a in alphas]
        ac_detail.append(f"{scheme.label}: gaps " + ", ".join(f"{g:.3g}" for g in gaps))
        ok = ok and gaps[0] > gaps[1] > gaps[2]
    ac_detail.append("exact-mode levels " + ", ".join(f"{fd[a]:.4g}" for a in alphas))
    assert ok


# 9

WF_CONFIGS = [
    (PotentialParams(-3.0, 0.05, alpha=0.4, q=1.0), 4),
    (PotentialParams(-6.0, 0.05, alpha=0.4, q=2.0), 3),
]


def bound_wavefunctions():
    for p, count in WF_CONFIGS:
        for scheme in ALL_SCHEMES:
            for n in range(count):
                yield p, scheme, n, build_wavefunction(p, NATURAL, StateIndex(n, 1), scheme)


@acceptance("AC9", "wavefunction suite")
def test_ac9_normalization(ac_detail):
    worst = 0.0
    for _, _, _, w in bound_wavefunctions():
        worst = max(worst, abs(square_integral(w) - 1.0))
    for n in range(3):
        for scheme in ALL_SCHEMES:
            w = build_wavefunction(table_params(1, 0.025), NATURAL, StateIndex(n, 1), scheme, strict=False)
            worst = max(worst, abs(square_integral(w) - 1.0))
    ac_detail.append(f"normalization: max |1 - int R^2| {worst:.2g}")
    assert worst <= 1e-8


@acceptance("AC9", "wavefunction suite")
def test_ac9_nodes(ac_detail):
    counts = [(n, node_count(w)) for _, _, n, w in bound_wavefunctions()]
    ac_detail.append(f"nodes: {sum(a == b for a, b in counts)}/{len(counts)} states with node_count == n")
    assert all(a == b for a, b in counts)


@acceptance("AC9", "wavefunction suite")
def test_ac9_boundary_decay(ac_detail):
    # distances are measured from the domain start (the pole wall when q > 1)
    worst = 0.0
    needed = 0.0
    for _, _, _, w in bound_wavefunctions():
        length = 1.0 / (w.alpha * w.s_exponent)
        x = np.linspace(0.0, 80.0 * length, 80001)[1:]
        v = np.abs(eval_radial(w, w.r_lower + x))
        worst = max(worst, v[x > 20.0 * length].max() / v.max())
        above = np.nonzero(v >= 1e-10 * v.max())[0]
        needed = max(needed, x[above[-1]] / length)
    ac_detail.append(f"decay: max |R| / peak beyond 20/(alpha sqrt(eps)) is {worst:.2g}")
    ac_detail.append(f"decay: 1e-10 of the peak is reached within {needed:.1f}/(alpha sqrt(eps))")
    assert worst < 1e-10


@acceptance("AC9", "wavefunction suite")
def test_ac9_jacobi_series(ac_detail):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(300):
        n = int(rng.integers(0, 11))
        a, b = rng.uniform(-0.9, 5.0, size=2)
        x = float(rng.uniform(-1.0, 1.0))
        ref = float(jacobi_series(n, a, b, x))
        worst = max(worst, abs(jacobi_eval(n, JacobiParams(a, b), x) - ref) / max(1.0, abs(ref)))
    ac_detail.append(f"Jacobi: max deviation from the series {worst:.2g}")
    assert worst <= 1e-12


@acceptance("AC9", "wavefunction suite")
def test_ac9_shape_vs_oracle(ac_detail):
    worst = 0.0
    for p, count in WF_CONFIGS:
        for scheme in ALL_SCHEMES:
            sol = solve_levels(p, NATURAL, StateIndex(count - 1, 1), CentrifugalMode.approximated(scheme), vectors=True)
            r = sol.grid.r[1:-1]
            for n, pair in enumerate(sol.pairs):
                w = build_wavefunction(p, NATURAL, StateIndex(n, 1), scheme)
                worst = max(worst, float(np.max(np.abs(np.abs(eval_radial(w, r)) - np.abs(pair.vector[1:-1])))))
                assert count_sign_changes(pair.vector, rel_floor=1e-8) == n
    ac_detail.append(f"shape: max-norm gap to the oracle eigenvector {worst:.2g}")
    assert worst <= 1e-3


# 10


@acceptance("AC10", "tables and figures byte-identical across reruns and worker counts")
def test_ac10_determinism(tmp_path):
    def snapshot(d):
        return {f.name: f.read_bytes() for f in sorted(d.iterdir())}

    results = []
    for i, workers in enumerate((1, 1, 4)):
        base = tmp_path / str(i)
        assert cli.main(["tables", "--out", str(base / "t"), "--workers", str(workers)]) == cli.EXIT_OK
        assert cli.main(["figures", "--out", str(base / "f"), "--workers", str(workers)]) == cli.EXIT_OK
        results.append((snapshot(base / "t"), snapshot(base / "f")))
    assert results[0] == results[1] == results[2]
    assert len(results[0][1]) == len(cli.FIGURE_IDS)
