"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import itertools
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from noumenal import (
    DensityOperator,
    SystemLattice,
    bell_incompleteness_demo,
    change_of_basis,
    ext_epimorphism,
    from_global_unitary,
    haar_random_unitary,
    haar_unitary,
    matrix_from_json,
    max_abs,
    mixed_state_witness,
    no_signalling_demo,
    noumenal_distance,
    noumenal_partial_trace,
    noumenal_product,
    partial_trace,
    phi,
    random_density_matrix,
    random_pure_state,
    run_law_suite,
)
from noumenal.evolution import CANONICAL
from noumenal.linalg import embed_operator

SEED = 7


def verdict(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def proper_subsystems(lattice):
    atoms = range(lattice.n_atoms)
    for r in range(1, lattice.n_atoms):
        for ids in itertools.combinations(atoms, r):
            yield lattice.system(ids)


def test_criterion_1_law_suite():
    started = time.perf_counter()
    worst = 0.0
    law_count = None
    for dims in ([2, 2], [2, 2, 2], [2, 3]):
        lattice = SystemLattice.from_dims(dims)
        reports = run_law_suite(lattice, trials=50, seed=SEED)
        law_count = len(reports)
        assert law_count >= 22
        for report in reports:
            assert report.passed is True, f"{dims} {report.law_id}: {report.max_residual}"
            worst = max(worst, report.max_residual)
    elapsed = time.perf_counter() - started
    ok = worst <= 1e-9 and elapsed < 60.0
    verdict(
        "criterion-1 law suite",
        ok,
        f"{law_count} laws x 50 trials x 3 lattices, worst residual {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_2_bell_incompleteness():
    started = time.perf_counter()
    lattice = SystemLattice.from_dims([2, 2])
    result = bell_incompleteness_demo(lattice)
    elapsed = time.perf_counter() - started
    verdicts = result.findings["verdicts"]
    marginal = matrix_from_json(result.findings["phenomenal_a"])
    marginal_gap = max_abs(marginal - np.eye(2) / 2)
    margins = result.findings["margins"]
    ok = (
        all(verdicts.values())
        and marginal_gap <= 1e-12
        and min(margins["c"], margins["d"]) >= 0.1
        and elapsed < 1.0
    )
    verdict(
        "criterion-2 bell incompleteness",
        ok,
        f"verdicts {sum(verdicts.values())}/5, I/2 gap {marginal_gap:.1e}, "
        f"margins >= {min(margins['c'], margins['d']):.2f}, {elapsed * 1000:.0f}ms",
    )


def test_criterion_3_product_reconstruction():
    lattice = SystemLattice.from_dims([2, 2, 2])
    rng = np.random.default_rng(SEED)
    partitions = list(proper_subsystems(lattice))
    assert lattice.system((0, 2)) in partitions
    worst = 0.0
    for _ in range(100):
        w = haar_unitary(lattice.global_system, rng)
        joint = from_global_unitary(w, lattice.global_system)
        for a_sys in partitions:
            b_sys = a_sys.complement()
            rebuilt = noumenal_product(
                noumenal_partial_trace(joint, b_sys),
                noumenal_partial_trace(joint, a_sys),
                check=False,
            )
            worst = max(worst, noumenal_distance(rebuilt, joint))
    ok = worst <= 1e-9
    verdict(
        "criterion-3 product reconstruction",
        ok,
        f"100 evolutions x {len(partitions)} bipartitions, worst residual {worst:.2e}",
    )


def test_criterion_4_epimorphism_oracle_equivalence():
    lattice = SystemLattice.from_dims([2, 2, 2])
    s = lattice.global_system
    rng = np.random.default_rng(SEED)
    partitions = list(proper_subsystems(lattice))
    worst = 0.0
    for trial in range(100):
        w = haar_unitary(s, rng)
        rho = DensityOperator(random_density_matrix(s.dim, rng), s)
        a_sys = partitions[trial % len(partitions)]
        via_grid = phi(rho, from_global_unitary(w, a_sys))
        evolved = w.matrix @ rho.matrix @ w.matrix.conj().T
        direct = partial_trace(evolved, s, a_sys.complement())
        worst = max(worst, max_abs(via_grid.matrix - direct))
    ok = worst <= 1e-9
    verdict(
        "criterion-4 epimorphism oracle equivalence",
        ok,
        f"100 (W, rho) pairs, worst residual {worst:.2e}",
    )


def test_criterion_5_no_signalling_and_no_action():
    lattice = SystemLattice.from_dims([2, 2, 2])
    worst_noumenal = 0.0
    worst_phenomenal = 0.0
    for a_sys in proper_subsystems(lattice):
        result = no_signalling_demo(lattice, trials=100, seed=SEED, a_atoms=a_sys.atom_ids)
        assert result.passed
        worst_noumenal = max(worst_noumenal, result.findings["noumenal_max_residual"])
        worst_phenomenal = max(worst_phenomenal, result.findings["phenomenal_max_residual"])
    ok = worst_noumenal <= 1e-9 and worst_phenomenal <= 1e-9
    verdict(
        "criterion-5 no-signalling / no-action",
        ok,
        f"100 trials x 6 bipartitions, noumenal {worst_noumenal:.2e}, "
        f"phenomenal {worst_phenomenal:.2e}",
    )


def test_criterion_6_mixed_lift_surjectivity():
    lattice = SystemLattice.from_dims([2, 2])
    rng = np.random.default_rng(SEED)
    a_sys = lattice.atom(0)
    worst = 0.0
    for _ in range(50):
        components = int(rng.integers(1, 5))
        weights = rng.random(components) + 0.05
        weights /= weights.sum()
        target = np.zeros((a_sys.dim, a_sys.dim), dtype=complex)
        for weight in weights:
            vec = random_pure_state(a_sys.dim, rng)
            target += weight * np.outer(vec, vec.conj())
        reached = ext_epimorphism(mixed_state_witness(DensityOperator(target, a_sys)))
        worst = max(worst, max_abs(reached.matrix - target))
    ok = worst <= 1e-12
    verdict(
        "criterion-6 mixed lift surjectivity",
        ok,
        f"50 mixed targets, worst residual {worst:.2e}",
    )


def test_criterion_7_change_of_basis_coherence():
    lattice = SystemLattice.from_dims([2, 2, 2])
    a_sys = lattice.system((0, 2))
    rng = np.random.default_rng(SEED)
    eye = np.eye(a_sys.dim)
    worst = 0.0
    for _ in range(20):
        w = haar_unitary(lattice.global_system, rng)
        state = from_global_unitary(w, a_sys)
        basis = haar_random_unitary(a_sys.dim, rng)
        transformed = change_of_basis(state, eye, basis, "target")
        # direct construction in the new basis
        direct = np.empty_like(state.entries)
        for k in range(a_sys.dim):
            for l in range(a_sys.dim):
                flip = np.outer(basis[:, l], basis[:, k].conj())
                direct[k, l] = w.matrix.conj().T @ embed_operator(flip, a_sys) @ w.matrix
        worst = max(worst, max_abs(transformed.entries - direct))
        # corollaries: identity, composition, round-trip bijection
        worst = max(worst, noumenal_distance(change_of_basis(state, eye, eye, CANONICAL), state))
        other = haar_random_unitary(a_sys.dim, rng)
        chained = change_of_basis(transformed, basis, other, "other")
        worst = max(worst, noumenal_distance(chained, change_of_basis(state, eye, other, "other")))
        back = change_of_basis(transformed, basis, eye, CANONICAL)
        worst = max(worst, noumenal_distance(back, state))
    ok = worst <= 1e-9
    verdict(
        "criterion-7 change-of-basis coherence",
        ok,
        f"20 random bases on a non-contiguous system, worst residual {worst:.2e}",
    )


def test_criterion_8_verify_determinism():
    argv = [
        sys.executable,
        "-m",
        "noumenal.cli",
        "verify",
        "--atoms",
        "2x2",
        "--trials",
        "10",
        "--seed",
        "123",
        "--format",
        "json",
    ]
    first = subprocess.run(argv, capture_output=True, check=True)
    second = subprocess.run(argv, capture_output=True, check=True)
    ok = first.stdout == second.stdout and len(first.stdout) > 0
    json.loads(first.stdout)  # and it is valid JSON
    verdict(
        "criterion-8 determinism",
        ok,
        f"two verify runs, {len(first.stdout)} bytes each, byte-identical={first.stdout == second.stdout}",
    )
