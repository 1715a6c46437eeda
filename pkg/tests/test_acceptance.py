"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line (shown in the pytest terminal summary)
before asserting.  Reference numbers below were evaluated independently
with mpmath at 30 digits from the closed forms they name.
"""

import math
import time

import numpy as np

from conftest import random_couplings, random_spinors
from neutron_pulse.cli import run_figure1
from neutron_pulse.laser import J_KAREN_P, peak_field_from_intensity, rms_field_from_energy, scenario_report
from neutron_pulse.oracle import PulseProfile, integrate_spin_ode
from neutron_pulse.spatial import apply_pulse_pointwise, empty_grid, homogeneous_field, make_plane_wave, momentum_spectrum
from neutron_pulse.spinor import IDENTITY, SPIN_UP, is_unitary, sigma_dot, spinor
from neutron_pulse.transfer import (
    delta_transfer,
    exponential_angle_gap,
    general_a_transfer,
    larmor_approx,
    norm_ratio,
    post_pulse_expectations,
    spin_flip_probability,
)

# b^2/(1+b^2/4)^2, -2b(1-b^2/4)/(1+b^2/4)^2, [(1-b^2/4)^2-b^2]/(1+b^2/4)^2 at b = 0.3
FLIP_03 = 0.0860826991708562240
S_Y_03 = -0.560972256263413059
S_Z_03 = 0.827834601658287552
# 0.3 - 2 arctan(0.15)
ANGLE_GAP_03 = 0.00222010478100549883
# rounded estimates quoted for the weak-coupling scenario
QUOTED = {"flip": 0.09, "S_z": 0.83, "S_y": -0.56}


def test_ac01_observables_at_weak_coupling(criterion):
    t0 = time.perf_counter()
    b = (0.3, 0.0, 0.0)
    flip = spin_flip_probability(b)
    e = post_pulse_expectations(b)
    elapsed = time.perf_counter() - t0
    exact_ok = abs(flip - FLIP_03) <= 1e-6 and abs(e.z - S_Z_03) <= 1e-6 and abs(e.y - S_Y_03) <= 1e-6
    rounded_ok = (
        abs(flip - QUOTED["flip"]) <= 0.005
        and abs(e.z - QUOTED["S_z"]) <= 0.005
        and abs(e.y - QUOTED["S_y"]) <= 0.005
    )
    ok = criterion(
        "AC1 observables at b=0.3",
        exact_ok and rounded_ok and elapsed < 0.1,
        f"flip={flip:.7f} S_z={e.z:.7f} S_y={e.y:.7f} (closed form 1e-6, quoted +-0.005), {elapsed * 1e3:.2f} ms",
    )
    assert ok


def test_ac02_peak_field(criterion):
    b = peak_field_from_intensity(5.5e26)
    rel = abs(b - 1.5e6) / 1.5e6
    assert criterion("AC2 peak field from intensity", rel <= 0.05, f"B={b:.4e} T, {rel:.2%} from 1.5e6 T")


def test_ac03_rms_field_chain(criterion):
    b = rms_field_from_energy(5.0, 20e-15, 2e-12)
    report = scenario_report(J_KAREN_P)
    g = report.coupling_rms
    ratio = g / 0.3
    ok = (
        abs(b - 5.12e5) / 5.12e5 <= 0.01
        and report.rms_B_tesla == b
        and abs(g - 0.94) <= 0.005
        and 0.1 <= ratio <= 10.0
    )
    assert criterion(
        "AC3 rms field chain",
        ok,
        f"B_rms={b:.4e} T, coupling={g:.4f}, ratio to quoted 0.3 = {ratio:.2f} (known gap, within one decade)",
    )


def test_ac04_association_constant(criterion, rng):
    mags = rng.uniform(0.0, 10.0, size=1000)
    worst_half = max(abs(norm_ratio(0.5, m) - 1.0) for m in mags)
    least_other = min(abs(norm_ratio(a, 1.0) - 1.0) for a in (0.0, 0.25, 0.4, 0.6, 1.0))
    worst_reduce = max(
        float(np.max(np.abs(general_a_transfer(0.5, b) - delta_transfer(b))))
        for b in random_couplings(rng, 1000, 10.0)
    )
    ok = worst_half <= 1e-12 and least_other >= 1e-7 and worst_reduce <= 1e-14
    assert criterion(
        "AC4 a=1/2 uniqueness",
        ok,
        f"max|ratio(1/2)-1|={worst_half:.1e}, min|ratio(a!=1/2)-1|={least_other:.3f}, "
        f"max|U_1/2-U|={worst_reduce:.1e}",
    )


def test_ac05_unitarity_and_continuity(criterion, rng):
    couplings = random_couplings(rng, 10_000, 10.0)
    all_unitary = all(is_unitary(delta_transfer(b), 1e-12) for b in couplings)

    n = 1024
    grid = empty_grid(1.0, n)
    worst = 0.0
    for trial in range(5):
        w = grid.with_values(random_spinors(rng, n) * rng.uniform(0.2, 3.0, size=(n, 1)))
        w = w.with_values(w.values / math.sqrt(w.norm()))
        field = rng.normal(scale=4.0, size=(n, 3)) if trial else homogeneous_field((0.3, 0, 0), n)
        worst = max(worst, abs(apply_pulse_pointwise(w, field).norm() - w.norm()))
    ok = all_unitary and worst <= 1e-12
    assert criterion(
        "AC5 unitarity and continuity",
        ok,
        f"10^4 couplings unitary at 1e-12: {all_unitary}; max norm drift on N=1024 = {worst:.1e}",
    )


def test_ac06_oracle_exactness(criterion):
    couplings = [(0.3, 0, 0), (1.0, 0, 0), (0, 0, 3.0), (1.2, -2.1, 1.5)]
    couplings[-1] = tuple(3.0 * np.array(couplings[-1]) / np.linalg.norm(couplings[-1]))
    worst = 0.0
    for kind in ("box", "gaussian"):
        for width in (1.0, 0.1, 0.01):
            for b in couplings:
                bmag = float(np.linalg.norm(b))
                exact = math.cos(bmag) * IDENTITY - 1j * math.sin(bmag) * sigma_dot(np.array(b) / bmag)
                u = integrate_spin_ode(PulseProfile(kind, width), b, 4096).propagator
                worst = max(worst, float(np.max(np.abs(u - exact))))
    assert criterion(
        "AC6 oracle exactness", worst <= 1e-9, f"max deviation {worst:.1e} over 2 kinds x 3 widths x 4 couplings"
    )


def test_ac07_gap_law(criterion):
    bs = np.array([0.05, 0.1, 0.2, 0.4])
    gaps = np.array([exponential_angle_gap(b) for b in bs])
    slope = float(np.polyfit(np.log(bs), np.log(gaps), 1)[0])
    gap = exponential_angle_gap(0.3)
    ok = abs(slope - 3.0) <= 0.1 and abs(gap - ANGLE_GAP_03) <= 1e-6
    assert criterion("AC7 Cayley-exponential gap law", ok, f"slope={slope:.4f}, gap(0.3)={gap:.6e}")


def test_ac08_momentum_invariance(criterion, rng):
    grid = empty_grid(2 * math.pi, 256)
    worst = 0.0
    for m in (0, 2, -17, 100):
        for chi in (SPIN_UP, spinor(0.6, 0.8j)):
            w = make_plane_wave(grid, m, chi)
            before = momentum_spectrum(w)
            for b in [(0.3, 0, 0), (2, 0, 0)] + list(rng.normal(scale=3, size=(3, 3))):
                after = momentum_spectrum(apply_pulse_pointwise(w, homogeneous_field(b, 256)))
                worst = max(worst, float(np.max(np.abs(after - before))))
    assert criterion("AC8 momentum invariance", worst <= 1e-12, f"max per-mode change {worst:.1e}")


def test_ac09_larmor_limit(criterion):
    rel = {}
    for b in (0.01, 0.1):
        exact = post_pulse_expectations((b, 0, 0)).y
        rel[b] = abs(larmor_approx((b, 0, 0)) - exact) / abs(exact)
    ok = rel[0.01] <= 1e-3 and rel[0.1] <= 1e-1
    assert criterion("AC9 Larmor limit", ok, f"rel err {rel[0.01]:.2e} at b=0.01, {rel[0.1]:.2e} at b=0.1")


def test_ac10_figure1(criterion):
    first = run_figure1(0.0, 6.0, 0.01)
    second = run_figure1(0.0, 6.0, 0.01)
    rows = {}
    for line in first.splitlines()[1:]:
        b, s_y, s_z = map(float, line.split(","))
        rows[b] = (s_y, s_z)
    anchors = {0.0: (0.0, 1.0), 0.3: (S_Y_03, S_Z_03), 2.0: (0.0, -1.0)}
    anchors_ok = all(
        b in rows and abs(rows[b][0] - want[0]) <= 1e-6 and abs(rows[b][1] - want[1]) <= 1e-6
        for b, want in anchors.items()
    )
    ok = anchors_ok and first == second and len(rows) == 601
    assert criterion(
        "AC10 figure-1 data",
        ok,
        f"{len(rows)} rows, anchors present: {anchors_ok}, byte-stable: {first == second}",
    )
