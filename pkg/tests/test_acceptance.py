"""Acceptance criteria, one test each.

Every test records a ``[PASS]``/``[FAIL]`` line through the ``criterion``
fixture (printed in the terminal summary) and then asserts the same
condition, so failures are visible both ways. Tolerances are the stated ones.
"""

import time
from pathlib import Path

import numpy as np

import oracles
from wignerfriend import cli
from wignerfriend import metrics as M
from wignerfriend.circuits import make_channel, memory_pair, ud_projectors
from wignerfriend.protocol import (
    alice_lab_state,
    circuit_lab_state,
    key_security,
    semiclassical_bound,
    theorem1_bounds,
    traced_negativity,
    ud_povm,
    wigner_state,
)
from wignerfriend.randomness import make_rng, random_density, random_povm, random_theorem1_instance, random_unitary
from wignerfriend.states import DensityMatrix, SubsystemLayout, partial_trace, to_density

GOLDEN = Path(__file__).parent / "golden"


def _up_weight(mat, up):
    return float(np.real(np.trace(up @ mat)))


def _block_unitary(d, rng):
    """Random unitary that commutes with the up/down projectors."""
    u = np.zeros((d, d), dtype=complex)
    for lo, hi in ((0, d // 2), (d // 2, d)):
        n = hi - lo
        u[lo:hi, lo:hi] = random_unitary(n, rng) if n > 1 else np.exp(2j * np.pi * rng.random())
    return u


def test_lab_state_negativities(criterion):
    start = time.perf_counter()
    rho = alice_lab_state(0.5)
    split = [M.negativity(rho, b) for b in ("am|t", "a|tm")]
    marginals = [M.negativity(rho, b) for b in ("a|t", "a|m", "t|m")]
    elapsed = time.perf_counter() - start
    ok = all(abs(v - 0.5) <= 1e-9 for v in split) and all(abs(v) <= 1e-9 for v in marginals) and elapsed < 1
    criterion("lab-state negativities", ok, f"am|t, a|tm = {split}; marginals = {marginals}; {elapsed:.3f}s")
    assert ok


def test_memory_distinguishability_identity_sweep(criterion):
    start = time.perf_counter()
    rng = make_rng(101)
    worst_id, worst_eq = 0.0, 0.0
    for k in range(200):
        d = 2 + k % 7
        tau = random_density(d, rng, pure=bool(k % 2))
        ups = random_density(d, rng, pure=bool(k % 3 == 0))
        rho = wigner_state(0.5, tau, ups)
        n1, n2 = M.negativity(rho, "a|tA"), M.negativity(rho, "aA|t")
        worst_id = max(worst_id, abs(n1 - 0.25 * oracles.trace_norm(tau.mat - ups.mat)))
        worst_eq = max(worst_eq, abs(n1 - n2))
    elapsed = time.perf_counter() - start
    ok = worst_id <= 1e-9 and worst_eq <= 1e-9 and elapsed < 30
    criterion("negativity = quarter trace norm (200 pairs)", ok,
              f"max |N - ||t-u||/4| = {worst_id:.2e}; max partition gap = {worst_eq:.2e}; {elapsed:.2f}s")
    assert ok


def test_pipeline_equivalence(criterion):
    # H on a then CNOT a->t applied literally to the GHZ state
    devs = {p: float(np.max(np.abs(circuit_lab_state(p).mat - alice_lab_state(p).mat)))
            for p in (0.0, 0.25, 0.5, 0.75, 1.0)}
    ok = all(v <= 1e-12 for v in devs.values())
    criterion("gate pipeline equals lab state", ok, "max entrywise deviation " + ", ".join(
        f"p={p}: {v:.3g}" for p, v in devs.items()))
    assert ok, devs


def test_witness_suite(criterion):
    rng = make_rng(202)
    worst_formula = worst_sym = 0.0
    bound_ok = True
    for k in range(100):
        d = 2 + k % 7
        up, down = ud_projectors(d)
        w1, w2 = M.build_witnesses(d, up, down)
        tau, ups = random_density(d, rng), random_density(d, rng, pure=bool(k % 2))
        rho = wigner_state(0.5, tau, ups)
        e1, e2 = M.witness_expectation(rho, w1), M.witness_expectation(rho, w2)
        worst_formula = max(worst_formula, abs(e1 - 0.25 * (_up_weight(tau.mat, up) - _up_weight(ups.mat, up))))
        worst_sym = max(worst_sym, abs(e1 + e2))
        bound_ok &= M.witness_violation(rho, w1, w2) <= M.negativity(rho, "a|tA") + 1e-12

    # memories with equal up and down weights: no detection
    worst_silent = 0.0
    for k in range(50):
        d = 2 + k % 7
        w1, w2 = M.build_witnesses(d, *ud_projectors(d))
        tau = random_density(d, rng)
        u = _block_unitary(d, rng)
        rho = wigner_state(0.5, tau, u @ tau.mat @ u.conj().T)
        viol = M.witness_violation(rho, w1, w2)
        worst_silent = max(worst_silent, viol)
        bound_ok &= viol <= M.negativity(rho, "a|tA") + 1e-12

    # memories whose up weights differ by at least 0.01: detection
    least_loud, loud = np.inf, 0
    while loud < 50:
        d = 2 + loud % 7
        up, down = ud_projectors(d)
        w1, w2 = M.build_witnesses(d, up, down)
        tau, ups = random_density(d, rng), random_density(d, rng)
        if abs(_up_weight(tau.mat, up) - _up_weight(ups.mat, up)) < 0.01:
            continue
        rho = wigner_state(0.5, tau, ups)
        viol = M.witness_violation(rho, w1, w2)
        least_loud = min(least_loud, viol)
        bound_ok &= viol <= M.negativity(rho, "a|tA") + 1e-12
        loud += 1

    ok = worst_formula <= 1e-10 and worst_sym <= 1e-10 and worst_silent <= 1e-12 and least_loud >= 1e-3 and bound_ok
    criterion("witness suite", ok,
              f"formula {worst_formula:.1e}, W1+W2 {worst_sym:.1e}, silent max {worst_silent:.1e}, "
              f"detected min {least_loud:.4f}, violation <= negativity: {bound_ok}")
    assert ok


def test_helstrom_optimality(criterion):
    rng = make_rng(303)
    worst_eq = 0.0
    for k in range(100):
        d = 2 + k % 5
        tau, ups = random_density(d, rng, pure=bool(k % 2)), random_density(d, rng)
        worst_eq = max(worst_eq, abs(M.povm_classical_distance(tau, ups, M.helstrom_povm(tau, ups))
                                     - M.trace_distance(tau, ups)))
    worst_excess = -np.inf
    for k in range(50):
        d = 2 + k % 5
        tau, ups = random_density(d, rng), random_density(d, rng)
        worst_excess = max(worst_excess, M.povm_classical_distance(tau, ups, random_povm(d, rng))
                           - M.trace_distance(tau, ups))
    p0, p1, pplus = oracles.proj([1, 0]), oracles.proj([0, 1]), oracles.proj(oracles.ket(1, 1))
    gap = M.trace_distance(p0, pplus) - M.povm_classical_distance(p0, pplus, M.POVM((p0, p1)))
    ok = worst_eq <= 1e-9 and worst_excess <= 1e-9 and abs(gap - (1 / np.sqrt(2) - 0.5)) <= 1e-9
    criterion("Helstrom attains the trace distance", ok,
              f"max |Helstrom - TD| = {worst_eq:.1e}; max POVM excess = {worst_excess:.3f}; gap = {gap:.5f}")
    assert ok


def test_private_state_security(criterion):
    checks = {}
    xi, zeta = memory_pair(0.0, 2)
    checks["eps=0"] = abs(key_security(wigner_state(0.5, to_density(xi), to_density(zeta))) - 0.5) <= 1e-9
    xi, zeta = memory_pair(1.0, 2)
    checks["eps=1"] = abs(key_security(wigner_state(0.5, to_density(xi), to_density(zeta)))) <= 1e-9

    worst_curve, bound_ok = 0.0, True
    for d in (2, 3, 4, 6):
        for eps in np.round(np.arange(0, 1.0001, 0.1), 12):
            xi, zeta = memory_pair(float(eps), d)
            tau, ups = to_density(xi), to_density(zeta)
            key = key_security(wigner_state(0.5, tau, ups))
            worst_curve = max(worst_curve, abs(key - 0.5 * np.sqrt(1 - eps**2)))
            bound_ok &= semiclassical_bound(tau, ups, ud_povm(d)) <= key + 1e-9
            for strength in (0.3, 1.0):
                for kind in ("dephasing", "depolarizing"):
                    ch = make_channel(kind, d, strength, "ud")
                    t2, u2 = ch(tau.mat), ch(ups.mat)
                    bound_ok &= semiclassical_bound(t2, u2, ud_povm(d)) <= key_security(wigner_state(0.5, t2, u2)) + 1e-9
    checks["curve"] = bool(worst_curve <= 1e-9)
    checks["semiclassical <= key"] = bound_ok

    deph = []
    for d in (2, 3, 4, 6):
        xi, zeta = memory_pair(0.0, d)
        ch = make_channel("dephasing", d, 1.0, "ud")
        deph.append(key_security(wigner_state(0.5, ch(to_density(xi).mat), ch(to_density(zeta).mat))))
    checks["ud dephasing"] = all(abs(v - 0.5) <= 1e-9 for v in deph)

    ok = all(checks.values())
    criterion("private-state key security", ok, f"{checks}; curve error {worst_curve:.1e}")
    assert ok


def test_traced_negativity_curve(criterion):
    rng = make_rng(404)
    grid = np.round(np.arange(0, 1.0001, 0.05), 12)
    worst = 0.0
    for k in range(10):
        d = 2 + k % 4
        tau, ups = random_density(d, rng), random_density(d, rng, pure=bool(k % 2))
        for p in grid:
            direct = M.negativity(partial_trace(wigner_state(float(p), tau, ups), ["a", "t"]), "a|t")
            worst = max(worst, abs(direct - abs(0.5 - p)), abs(traced_negativity(float(p), tau, ups) - abs(0.5 - p)))
    ok = worst <= 1e-10
    criterion("traced negativity |1/2 - p|", ok, f"max deviation {worst:.1e} over 21 points x 10 pairs")
    assert ok


def test_theorem1_sandwich(criterion):
    start = time.perf_counter()
    rng = make_rng(505)
    sandwich_fail, unequal, worst_gap = 0, 0, 0.0
    for _ in range(500):
        res = theorem1_bounds(random_theorem1_instance(rng))
        sandwich_fail += not res.sandwich_ok
        gap = abs(res.value_xz_y - res.value_x_yz)
        worst_gap = max(worst_gap, gap)
        unequal += gap > 1e-9
    worst_sat = 0.0
    for _ in range(50):
        res = theorem1_bounds(random_theorem1_instance(rng, (2, 2, 4), disjoint=True))
        worst_sat = max(worst_sat, abs(res.value_xz_y - res.upper), abs(res.value_x_yz - res.upper))
    elapsed = time.perf_counter() - start
    ok = sandwich_fail == 0 and unequal == 0 and worst_sat <= 1e-9 and elapsed < 120
    criterion("Theorem 1 sandwich", ok,
              f"sandwich violations {sandwich_fail}/500; XZ|Y != X|YZ on {unequal}/500 (max gap {worst_gap:.2e}); "
              f"disjoint saturation error {worst_sat:.1e}; {elapsed:.1f}s")
    assert sandwich_fail == 0, "sandwich violated"
    assert worst_sat <= 1e-9, "disjoint shields do not saturate"
    assert unequal == 0, f"assisted values differ between XZ|Y and X|YZ on {unequal}/500 instances"


def test_cli_golden_files(criterion, tmp_path, capsys, monkeypatch):
    same = {}
    for name, param in (("p_sweep", "p=0:1:0.25"), ("eps_sweep", "epsilon=0:1:0.5")):
        out = tmp_path / f"{name}.csv"
        code = cli.main(["sweep", str(GOLDEN / f"{name}.json"), "--param", param, "--out", str(out)])
        same[name] = code == 0 and out.read_bytes() == (GOLDEN / f"{name}.csv").read_bytes()
    codes = {
        "bad partition": cli.main(["simulate", str(GOLDEN / "bad_partition.json")]),
        "non-CPTP channel": cli.main(["simulate", str(GOLDEN / "bad_channel.json")]),
        "bad JSON": cli.main(["simulate", str(GOLDEN / "bad_json.json")]),
        "empty grid": cli.main(["sweep", str(GOLDEN / "p_sweep.json"), "--param", "p=1:0:0.1"]),
    }

    def boom(*_):
        raise np.linalg.LinAlgError("forced")

    monkeypatch.setattr(np.linalg, "eigh", boom)
    monkeypatch.setattr(np.linalg, "eigvalsh", boom)
    codes["solver failure"] = cli.main(["simulate", str(GOLDEN / "p_sweep.json")])
    monkeypatch.undo()
    capsys.readouterr()
    expected = {"bad partition": 2, "non-CPTP channel": 2, "bad JSON": 2, "empty grid": 2, "solver failure": 3}
    ok = all(same.values()) and codes == expected
    criterion("CLI golden files and exit codes", ok, f"byte-identical {same}; exit codes {codes}")
    assert ok


def test_s4_instances_are_really_silent():
    # sanity check of the construction used above
    rng = make_rng(1)
    d = 4
    up, _ = ud_projectors(d)
    tau = random_density(d, rng)
    u = _block_unitary(d, rng)
    ups = DensityMatrix(SubsystemLayout((("A", d),)), u @ tau.mat @ u.conj().T)
    assert abs(_up_weight(tau.mat, up) - _up_weight(ups.mat, up)) <= 1e-12
    assert M.trace_distance(tau, ups) > 1e-3
