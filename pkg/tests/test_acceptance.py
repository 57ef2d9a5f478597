"""Release acceptance suite.

One test per criterion, each printing a [PASS]/[FAIL] line with the measured
quantity so a plain `pytest -s tests/test_acceptance.py` doubles as a report.
All tolerances are fixed here, not tuned elsewhere.
"""

import time
from dataclasses import replace

import numpy as np
import pytest
from scipy.stats import kstest

from softrisk.aggregation import ExpertEstimate, aggregate
from softrisk.distributions import (
    BetaParams,
    TriangularParams,
    cdf_soft,
    derive_coefficients,
    pdf_sharp,
    pdf_soft,
    pdf_triangular,
    sample_soft,
    to_grid,
    validate_params,
)
from softrisk.risk_product import product_cdf, product_density
from softrisk.session_store import Question, SessionStore

from conftest import SIX_EXPERT_PANEL, quadrature_mass, random_soft_params


def report(name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def thousand_params():
    return random_soft_params(np.random.default_rng(20240917), 1000)


def test_normalization_suite(thousand_params):
    start = time.perf_counter()
    worst = max(abs(quadrature_mass(p) - 1.0) for p in thousand_params)
    elapsed = time.perf_counter() - start
    report(
        "normalization: 1000 random params integrate to 1 within 1e-6",
        worst <= 1e-6 and elapsed < 10.0,
        f"worst |mass-1| = {worst:.2e}, {elapsed:.2f}s",
    )


def test_median_and_continuity_suite(thousand_params):
    worst_median = 0.0
    worst_jump = 0.0
    for p in thousand_params:
        c = derive_coefficients(p)
        worst_median = max(worst_median, abs(cdf_soft(p, p.median) - 0.5))
        narrow_limit = pdf_soft(p, p.median)
        wide_limit = c.tail_floor + c.amplitude
        worst_jump = max(worst_jump, abs(narrow_limit - wide_limit), abs(narrow_limit - c.peak))
    report(
        "median/continuity: cdf(median) = 0.5 and density limits agree within 1e-12",
        worst_median <= 1e-12 and worst_jump <= 1e-12,
        f"worst median dev = {worst_median:.2e}, worst limit gap = {worst_jump:.2e}",
    )


def test_sharp_equals_wide_at_phi_one():
    rng = np.random.default_rng(42)
    worst = 0.0
    for p in random_soft_params(rng, 100):
        sharp_params = replace(p, phi=1.0)
        xs = np.linspace(sharp_params.low, sharp_params.high, 10001)
        gap = np.max(np.abs(pdf_soft(sharp_params, xs) - pdf_sharp(sharp_params, xs)))
        worst = max(worst, gap)
    report(
        "sharp/wide coincidence at phi=1 within 1e-12 (100 params, 10001-point grids)",
        worst <= 1e-12,
        f"worst sup gap = {worst:.2e}",
    )


def test_symmetric_collapse_to_triangle():
    p = validate_params(50, 60, 70, 1.0)
    t = TriangularParams(50, 60, 70)
    xs = np.linspace(45.0, 75.0, 10001)
    gap = np.max(np.abs(pdf_soft(p, xs) - pdf_triangular(t, xs)))
    report(
        "symmetric collapse: (50,60,70,phi=1) equals triangular(50,60,70) within 1e-12",
        gap <= 1e-12,
        f"sup gap = {gap:.2e}",
    )


def test_tail_floor_family():
    phis = [k / 10.0 for k in range(1, 11)]
    floors = []
    exact = True
    for phi in phis:
        p = validate_params(20.0, 40.0, 80.0, phi)
        floor = pdf_soft(p, 80.0)
        exact = exact and floor == (1.0 - phi) / 80.0
        floors.append(floor)
    decreasing = all(a > b for a, b in zip(floors, floors[1:]))
    report(
        "tail-floor family: density at the wide extreme equals (1-phi)/80 exactly "
        "and decreases in phi",
        exact and decreasing,
        f"floors {floors[0]:.6g} .. {floors[-1]:.6g}",
    )


def test_six_expert_panel_reproduction():
    estimates = [
        ExpertEstimate(expert_id=f"expert-{i + 1}", params=validate_params(*row))
        for i, row in enumerate(SIX_EXPERT_PANEL)
    ]
    start = time.perf_counter()
    pooled = aggregate(estimates, weighted=False, n_points=1001, min_prominence=0.02)
    elapsed = time.perf_counter() - start
    mass = pooled.grid.mass()
    modes = pooled.mode_locations
    shared_median_peaks = [m for m in modes if 58.0 <= m <= 62.0]
    report(
        "six-expert panel: unit mass, >=2 modes, shared-median experts unresolved, <1s",
        abs(mass - 1.0) <= 1e-6
        and len(modes) >= 2
        and len(shared_median_peaks) <= 1
        and elapsed < 1.0,
        f"mass = {mass:.9f}, modes at {[round(m, 2) for m in modes]}, {elapsed * 1e3:.0f}ms",
    )


def test_uniform_product_oracle():
    uniform = to_grid(BetaParams(1, 1), 2001)
    ts = np.linspace(0.0, 1.0, 2001)
    pairs = product_cdf(uniform, uniform, ts)
    values = np.array([v for _, v in pairs])
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = np.where(ts > 0.0, ts - ts * np.log(ts), 0.0)
    sup = float(np.max(np.abs(values - exact)))
    density = product_density(pairs)
    at_half = float(density.values[1000])
    report(
        "product oracle: uniform x uniform CDF within 1e-3 sup norm, density(0.5) = 0.6931 +- 0.01",
        sup <= 1e-3 and abs(at_half - 0.6931) <= 0.01,
        f"sup = {sup:.2e}, density(0.5) = {at_half:.4f}",
    )


def test_monte_carlo_cross_check():
    start = time.perf_counter()
    v_params = validate_params(0.1, 0.4, 0.9, 0.5)
    t_params = validate_params(0.2, 0.5, 0.8, 1.0)
    v = to_grid(v_params, 2001, support_override=(0.0, 1.0))
    t = to_grid(t_params, 2001, support_override=(0.0, 1.0))
    ts = np.linspace(0.0, 1.0, 2001)
    values = np.array([val for _, val in product_cdf(v, t, ts)])

    n = 1_000_000
    products = np.sort(sample_soft(v_params, seed=314, count=n) * sample_soft(t_params, seed=159, count=n))
    deciles = np.arange(0.1, 1.0, 0.1)
    numeric = np.interp(deciles, ts, values)
    empirical = np.searchsorted(products, deciles, side="right") / n
    worst = float(np.max(np.abs(numeric - empirical)))
    elapsed = time.perf_counter() - start
    report(
        "Monte Carlo cross-check: product CDF at deciles within 3e-3 of 1e6 samples, <30s",
        worst <= 3e-3 and elapsed < 30.0,
        f"worst decile gap = {worst:.2e}, {elapsed:.1f}s",
    )


def test_inverse_transform_sampler():
    rng = np.random.default_rng(7)
    worst = 0.0
    for i, p in enumerate(random_soft_params(rng, 20)):
        samples = sample_soft(p, seed=1000 + i, count=100_000)
        stat = kstest(samples, lambda x: cdf_soft(p, x)).statistic
        worst = max(worst, float(stat))
    report(
        "sampler: KS statistic below 0.01 at 1e5 samples for 20 random params",
        worst < 0.01,
        f"worst KS = {worst:.4f}",
    )


def test_store_durability(tmp_path):
    rng = np.random.default_rng(2718)
    data_dir = tmp_path / "sessions"
    store = SessionStore(data_dir)
    session_ids = []
    cycles = 0
    while cycles < 100:
        op = int(rng.integers(0, 4))
        if op == 0 or not session_ids:
            question = Question(f"q{cycles}", "prompt", "utility", bounds=(0.0, 100.0))
            sid = store.create_session([question]).session_id
            session_ids.append(sid)
        elif op in (1, 2):
            sid = session_ids[int(rng.integers(0, len(session_ids)))]
            session = store.get_session(sid)
            if session.status != "open":
                continue
            a, b, c = np.sort(rng.uniform(0.0, 100.0, size=3))
            if not a < b < c:
                continue
            estimate = ExpertEstimate(
                expert_id=f"e{int(rng.integers(0, 5))}",
                params=validate_params(a, b, c, rng.uniform(0.01, 1.0)),
                weight=float(rng.uniform(0.5, 3.0)),
            )
            store.submit_estimate(sid, session.questions[0].question_id, estimate)
        else:
            sid = session_ids[int(rng.integers(0, len(session_ids)))]
            store.close_session(sid)
        cycles += 1
        exported = store.export_session(sid)
        refetched = SessionStore(data_dir).export_session(sid)
        if refetched != exported:
            report("store durability: 100 mutate/reload cycles byte-identical", False,
                   f"diverged at cycle {cycles}")
    report(
        "store durability: 100 mutate/reload cycles byte-identical",
        True,
        f"{cycles} cycles over {len(session_ids)} sessions",
    )
