"""Circuit files and dual-track simulation.

A circuit file (JSON) declares the lattice atoms, an initial global state,
a gate list, and which systems to track.  Simulation accumulates the global
operation gate by gate and emits, per tracked system, both descriptions of
its state: the evolution-matrix grid and the density operator, together
with a cross-check residual between the grid's image under the epimorphism
and the directly reduced evolved state.

Schema::

    {
      "atoms": [{"id": 0, "dim": 2, "label": "A"}, ...],
      "initial_state": "pure:|00>"            # or an explicit density matrix
      "gates": [{"name": "H", "targets": [0]},
                {"matrix": [[[re,im],...],...], "targets": [0, 1]}],
      "track": [[0], [0, 1]]                  # optional; default: global system
    }

Named gates: I, X, Y, Z, H, S, T (one qubit), CNOT, SWAP, CZ (two qubits,
control first).  A gate's matrix is read in the listed target order and
re-indexed into the canonical ascending atom order internally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .lattice import AtomSpec, System, SystemLattice
from .linalg import (
    GATES,
    TOL_EQ,
    DensityOperator,
    UnitaryOperator,
    embed_operator,
    matrix_from_json,
    matrix_to_json,
    max_abs,
    partial_trace,
)
from .linalg import _digit_table  # package-internal index helper
from .evolution import from_global_unitary
from .phenomenal import basis_state_vector, phi, pure_density

ONE_QUBIT_GATES = ("I", "X", "Y", "Z", "H", "S", "T")
TWO_QUBIT_GATES = ("CNOT", "SWAP", "CZ")


@dataclass
class GateApplication:
    """One gate: an optional name, its matrix in listed-target order."""

    targets: tuple[int, ...]
    matrix: np.ndarray
    name: str | None = None


@dataclass
class Circuit:
    lattice: SystemLattice
    anchor: DensityOperator
    gates: list[GateApplication]
    track: list[System]


def _listed_order_permutation(system: System, targets: tuple[int, ...]) -> np.ndarray:
    """Map canonical (ascending-atom) indices to listed-target-order indices."""
    ascending = system.atom_ids
    dims = dict(zip(ascending, system.atom_dims))
    table = _digit_table(system)
    perm = np.zeros(system.dim, dtype=np.intp)
    for atom_id in targets:
        perm = perm * dims[atom_id] + table[ascending.index(atom_id)]
    return perm


def gate_unitary(gate: GateApplication, lattice: SystemLattice) -> UnitaryOperator:
    """The gate as a unitary on its target system, canonical basis."""
    if len(set(gate.targets)) != len(gate.targets):
        raise ValidationError(f"gate targets must be distinct, got {gate.targets}")
    system = lattice.system(gate.targets)
    matrix = np.asarray(gate.matrix, dtype=np.complex128)
    if matrix.shape != (system.dim, system.dim):
        raise ValidationError(
            f"gate matrix is {matrix.shape} but targets {gate.targets} span dimension {system.dim}"
        )
    perm = _listed_order_permutation(system, gate.targets)
    return UnitaryOperator(matrix[np.ix_(perm, perm)], system)


# ---------------------------------------------------------------------------
# Parsing.
# ---------------------------------------------------------------------------

def _parse_atoms(payload) -> SystemLattice:
    if not isinstance(payload, list) or not payload:
        raise ParseError("'atoms' must be a non-empty list")
    atoms = []
    for entry in payload:
        try:
            atoms.append(AtomSpec(int(entry["id"]), int(entry["dim"]), entry.get("label")))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed atom entry {entry!r}: {exc}") from exc
    return SystemLattice(sorted(atoms, key=lambda a: a.atom_id))


def _parse_initial_state(payload, lattice: SystemLattice) -> DensityOperator:
    system = lattice.global_system
    if payload is None:
        payload = "pure:" + "0" * lattice.n_atoms
    if isinstance(payload, str):
        if not payload.startswith("pure:"):
            raise ParseError(f"string initial states must look like 'pure:|01>', got {payload!r}")
        digits_text = payload[len("pure:"):].strip().lstrip("|").rstrip(">⟩")
        if len(digits_text) != lattice.n_atoms or not digits_text.isdigit():
            raise ParseError(
                f"need one digit per atom ({lattice.n_atoms}), got {digits_text!r}"
            )
        digits = tuple(int(c) for c in digits_text)
        try:
            return pure_density(system, basis_state_vector(system, digits))
        except ValidationError as exc:
            raise ParseError(str(exc)) from exc
    matrix = matrix_from_json(payload)
    return DensityOperator(matrix, system)


def _parse_gates(payload, lattice: SystemLattice) -> list[GateApplication]:
    if payload is None:
        return []
    gates = []
    for entry in payload:
        try:
            targets = tuple(int(t) for t in entry["targets"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed gate entry {entry!r}: {exc}") from exc
        if "name" in entry:
            name = str(entry["name"])
            if name not in GATES:
                raise ParseError(f"unknown gate {name!r}; known: {sorted(GATES)}")
            arity = 1 if name in ONE_QUBIT_GATES else 2
            if len(targets) != arity:
                raise ParseError(f"gate {name} takes {arity} target(s), got {targets}")
            for t in targets:
                if not 0 <= t < lattice.n_atoms:
                    raise ParseError(f"gate target {t} is not an atom id")
                if lattice.dims[t] != 2:
                    raise ValidationError(f"named gate {name} needs qubit targets; atom {t} has dim {lattice.dims[t]}")
            gates.append(GateApplication(targets, GATES[name], name))
        elif "matrix" in entry:
            gates.append(GateApplication(targets, matrix_from_json(entry["matrix"])))
        else:
            raise ParseError(f"gate entry needs 'name' or 'matrix': {entry!r}")
    return gates


def _parse_track(payload, lattice: SystemLattice) -> list[System]:
    if payload is None:
        return [lattice.global_system]
    systems = []
    for ids in payload:
        systems.append(lattice.system(int(i) for i in ids))
    return systems


def circuit_from_json(payload: dict) -> Circuit:
    if not isinstance(payload, dict):
        raise ParseError("circuit file must be a JSON object")
    if "atoms" not in payload:
        raise ParseError("circuit file is missing 'atoms'")
    lattice = _parse_atoms(payload["atoms"])
    anchor = _parse_initial_state(payload.get("initial_state"), lattice)
    gates = _parse_gates(payload.get("gates"), lattice)
    track = _parse_track(payload.get("track"), lattice)
    return Circuit(lattice, anchor, gates, track)


def load_circuit(path: str | Path) -> Circuit:
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read circuit file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"circuit file {path} is not valid JSON: {exc}") from exc
    return circuit_from_json(payload)


# ---------------------------------------------------------------------------
# Simulation.
# ---------------------------------------------------------------------------

def _snapshot(circuit: Circuit, w_total: np.ndarray, tol: float) -> tuple[list[dict], float]:
    lattice = circuit.lattice
    s = lattice.global_system
    w = UnitaryOperator(w_total, s)
    evolved = w_total @ circuit.anchor.matrix @ w_total.conj().T
    tracked = []
    worst = 0.0
    for system in circuit.track:
        grid = from_global_unitary(w, system)
        phenomenal = phi(circuit.anchor, grid)
        direct = partial_trace(evolved, s, system.complement())
        residual = max_abs(phenomenal.matrix - direct)
        worst = max(worst, residual)
        tracked.append(
            {
                "system": list(system.atom_ids),
                "evolution": grid.to_json(),
                "phenomenal": matrix_to_json(phenomenal.matrix),
                "cross_check_residual": residual,
                "cross_check_ok": residual <= tol,
            }
        )
    return tracked, worst


def simulate_circuit(circuit: Circuit, tol: float = TOL_EQ) -> dict:
    """Run the circuit, emitting both state descriptions after every gate."""
    lattice = circuit.lattice
    w_total = np.eye(lattice.global_dim, dtype=np.complex128)
    steps = []
    worst = 0.0

    tracked, step_worst = _snapshot(circuit, w_total, tol)
    worst = max(worst, step_worst)
    steps.append({"step": 0, "gate": None, "targets": None, "tracked": tracked})

    for t, gate in enumerate(circuit.gates, start=1):
        unitary = gate_unitary(gate, lattice)
        w_total = embed_operator(unitary.matrix, unitary.system) @ w_total
        tracked, step_worst = _snapshot(circuit, w_total, tol)
        worst = max(worst, step_worst)
        steps.append(
            {
                "step": t,
                "gate": gate.name if gate.name is not None else "matrix",
                "targets": list(gate.targets),
                "tracked": tracked,
            }
        )

    return {
        "atoms": [
            {"id": a.atom_id, "dim": a.dim, "label": a.label} for a in lattice.atoms
        ],
        "initial_state": matrix_to_json(circuit.anchor.matrix),
        "steps": steps,
        "max_cross_check_residual": worst,
        "tolerance": tol,
        "passed": worst <= tol,
    }
