"""Dense complex linear algebra over lattice systems.

Everything is a plain ``numpy`` ``complex128`` array.  The functions here do
the index bookkeeping that the fixed atom order demands: merging subsystem
basis indices into composite ones, embedding operators with identity padding
on the remaining atoms (at their global positions, not contiguously), and
partial traces over arbitrary atom subsets.

Matrices serialize to JSON as nested row-major arrays of ``[re, im]`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DisjointnessViolation,
    IndexOutOfRange,
    NotSubsystem,
    ParseError,
    SystemMismatch,
    ValidationError,
)
from .lattice import System

#: Max-abs residual allowed when testing a matrix for unitarity.
TOL_UNITARY = 1e-10
#: Max-abs elementwise residual treated as equality.
TOL_EQ = 1e-9
#: Eigenvalue floor for positive-semidefinite checks.
TOL_PSD = 1e-9


def max_abs(a: np.ndarray) -> float:
    """Largest absolute value of the entries (0.0 for empty arrays)."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def as_complex_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    arr = np.array(data, dtype=np.complex128, order="C")
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={arr.ndim}")
    if rows is not None and arr.shape != (rows, cols if cols is not None else rows):
        raise DimensionMismatch(f"expected shape {(rows, cols or rows)}, got {arr.shape}")
    return arr


def is_unitary(matrix: np.ndarray, tol: float = TOL_UNITARY) -> bool:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    gram = matrix.conj().T @ matrix
    return max_abs(gram - np.eye(matrix.shape[0])) <= tol


# ---------------------------------------------------------------------------
# JSON form: nested lists of [re, im] pairs, row-major.
# ---------------------------------------------------------------------------

def matrix_to_json(matrix: np.ndarray) -> list:
    matrix = np.asarray(matrix, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def matrix_from_json(payload) -> np.ndarray:
    try:
        arr = np.asarray(payload, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix payload: {exc}") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ParseError(f"matrix payload must be rows x cols x [re,im], got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


# ---------------------------------------------------------------------------
# Validated operator types.
# ---------------------------------------------------------------------------

def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class UnitaryOperator:
    """A unitary matrix acting on a system, in that system's canonical basis."""

    matrix: np.ndarray
    system: System

    def __post_init__(self) -> None:
        matrix = as_complex_matrix(self.matrix)
        d = self.system.dim
        if matrix.shape != (d, d):
            raise DimensionMismatch(
                f"operator is {matrix.shape}, but system {self.system} has dimension {d}"
            )
        if not is_unitary(matrix):
            raise ValidationError("matrix is not unitary within TOL_UNITARY")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def dim(self) -> int:
        return self.system.dim

    def dagger(self) -> "UnitaryOperator":
        return UnitaryOperator(self.matrix.conj().T, self.system)

    def compose(self, other: "UnitaryOperator") -> "UnitaryOperator":
        """``self @ other``: do ``other`` first, then ``self``."""
        if self.system != other.system:
            raise SystemMismatch("cannot compose operations on different systems")
        return UnitaryOperator(self.matrix @ other.matrix, self.system)

    __matmul__ = compose


def identity_operator(system: System) -> UnitaryOperator:
    return UnitaryOperator(np.eye(system.dim, dtype=np.complex128), system)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A density matrix on a system: Hermitian, unit trace.

    Positivity is only checked on request (:meth:`validate_psd`), since the
    eigendecomposition is the one expensive validation.
    """

    matrix: np.ndarray
    system: System

    def __post_init__(self) -> None:
        matrix = as_complex_matrix(self.matrix)
        d = self.system.dim
        if matrix.shape != (d, d):
            raise DimensionMismatch(
                f"state is {matrix.shape}, but system {self.system} has dimension {d}"
            )
        if max_abs(matrix - matrix.conj().T) > TOL_EQ:
            raise ValidationError("density matrix is not Hermitian within TOL_EQ")
        if abs(np.trace(matrix) - 1.0) > TOL_EQ:
            raise ValidationError(f"density matrix has trace {np.trace(matrix):.3g}, expected 1")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def dim(self) -> int:
        return self.system.dim

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def is_pure(self, tol: float = TOL_EQ) -> bool:
        return abs(self.purity() - 1.0) <= tol

    def validate_psd(self, tol: float = TOL_PSD) -> None:
        eigenvalues = np.linalg.eigvalsh(self.matrix)
        if eigenvalues.min() < -tol:
            raise ValidationError(f"density matrix has eigenvalue {eigenvalues.min():.3g} < -TOL_PSD")


# ---------------------------------------------------------------------------
# Index bookkeeping under the fixed atom order.
# ---------------------------------------------------------------------------

def _digit_table(system: System) -> np.ndarray:
    """Digits of every basis index of ``system``, one row per member atom.

    Row order follows ascending atom id; the first atom is the most
    significant digit.  Shape ``(n_member_atoms, system.dim)``.
    """
    dims = system.atom_dims
    indices = np.arange(system.dim)
    rows = []
    remainder = indices
    for d in reversed(dims):
        rows.append(remainder % d)
        remainder = remainder // d
    rows.reverse()
    if not rows:
        return np.zeros((0, 1), dtype=np.intp)
    return np.stack(rows)


def index_map(a_sys: System, b_sys: System) -> np.ndarray:
    """Flat composite indices of ``|i> ⊗ |k>`` for disjoint systems.

    Returns an integer array ``M`` of shape ``(a_sys.dim, b_sys.dim)`` with
    ``M[i, k]`` the index of the product vector in the canonical basis of the
    union, whose digits run over the union's atoms in ascending order.  The
    map is a bijection onto ``range(dim(union))``.
    """
    if not a_sys.is_disjoint_from(b_sys):
        raise DisjointnessViolation(f"systems {a_sys} and {b_sys} overlap")
    union = a_sys.union(b_sys)
    a_digits = _digit_table(a_sys)
    b_digits = _digit_table(b_sys)
    a_ids, b_ids = a_sys.atom_ids, b_sys.atom_ids
    out = np.zeros((a_sys.dim, b_sys.dim), dtype=np.intp)
    stride = 1
    for atom_id, d in zip(reversed(union.atom_ids), reversed(union.atom_dims)):
        if atom_id in a_ids:
            digit = a_digits[a_ids.index(atom_id)][:, None]
        else:
            digit = b_digits[b_ids.index(atom_id)][None, :]
        out += stride * digit
        stride *= d
    return out


def merge_indices(a_sys: System, b_sys: System, i: int, k: int) -> int:
    """Index of ``|i>^A ⊗ |k>^B`` in the canonical basis of the union."""
    if not 0 <= i < a_sys.dim:
        raise IndexOutOfRange(f"index {i} outside system of dimension {a_sys.dim}")
    if not 0 <= k < b_sys.dim:
        raise IndexOutOfRange(f"index {k} outside system of dimension {b_sys.dim}")
    return int(index_map(a_sys, b_sys)[i, k])


def embed_operator(
    op: np.ndarray, a_sys: System, within: System | None = None
) -> np.ndarray:
    """Pad ``op`` with identity on the remaining atoms of ``within``.

    The result represents ``op ⊗ I`` on ``within`` (default: the global
    system) in its canonical basis, with the atoms of ``a_sys`` kept at their
    global positions rather than moved to the front.
    """
    if within is None:
        within = a_sys.lattice.global_system
    if not a_sys.is_subsystem_of(within):
        raise NotSubsystem(f"{a_sys} is not contained in {within}")
    op = as_complex_matrix(op)
    if op.shape != (a_sys.dim, a_sys.dim):
        raise DimensionMismatch(
            f"operator is {op.shape}, but system {a_sys} has dimension {a_sys.dim}"
        )
    rest = within.difference(a_sys)
    perm = index_map(a_sys, rest).reshape(-1)
    grouped = np.kron(op, np.eye(rest.dim, dtype=np.complex128))
    out = np.empty((within.dim, within.dim), dtype=np.complex128)
    out[np.ix_(perm, perm)] = grouped
    return out


def tensor_operators(
    op_a: np.ndarray, a_sys: System, op_b: np.ndarray, b_sys: System
) -> np.ndarray:
    """Operator ``op_a ⊗ op_b`` on the union, in its canonical basis."""
    op_a = as_complex_matrix(op_a, a_sys.dim)
    op_b = as_complex_matrix(op_b, b_sys.dim)
    perm = index_map(a_sys, b_sys).reshape(-1)
    grouped = np.kron(op_a, op_b)
    out = np.empty((a_sys.dim * b_sys.dim,) * 2, dtype=np.complex128)
    out[np.ix_(perm, perm)] = grouped
    return out


def product_of_operations(u: UnitaryOperator, v: UnitaryOperator) -> UnitaryOperator:
    """The joint operation ``u x v`` on the union of two disjoint systems."""
    matrix = tensor_operators(u.matrix, u.system, v.matrix, v.system)
    return UnitaryOperator(matrix, u.system.union(v.system))


def partial_trace(matrix: np.ndarray, system: System, traced: System) -> np.ndarray:
    """Trace an operator on ``system`` over the atoms of ``traced``."""
    if not traced.is_subsystem_of(system):
        raise NotSubsystem(f"{traced} is not contained in {system}")
    matrix = as_complex_matrix(matrix, system.dim)
    keep = system.difference(traced)
    perm = index_map(keep, traced).reshape(-1)
    grouped = matrix[np.ix_(perm, perm)].reshape(keep.dim, traced.dim, keep.dim, traced.dim)
    return np.trace(grouped, axis1=1, axis2=3)


def phenomenal_partial_trace(rho: DensityOperator, traced: System) -> DensityOperator:
    """Reduced state of ``rho`` after discarding the atoms of ``traced``."""
    reduced = partial_trace(rho.matrix, rho.system, traced)
    return DensityOperator(reduced, rho.system.difference(traced))


# ---------------------------------------------------------------------------
# Random inputs for law checks.  All randomness flows through an explicit
# numpy Generator so that runs are reproducible.
# ---------------------------------------------------------------------------

def haar_random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    R diagonal phase-normalized."""
    if dim < 1:
        raise ValidationError(f"dimension must be >= 1, got {dim}")
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(ginibre)
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases


def haar_unitary(system: System, rng: np.random.Generator) -> UnitaryOperator:
    return UnitaryOperator(haar_random_unitary(system.dim, rng), system)


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """A Haar-random unit vector."""
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_density_matrix(
    dim: int, rng: np.random.Generator, rank: int | None = None
) -> np.ndarray:
    """A random mixed state: normalized ``G G†`` for a Ginibre ``G``."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


# ---------------------------------------------------------------------------
# Named gates used by circuit files and demonstrations (qubit conventions,
# two-atom gates in control-first row-major order).
# ---------------------------------------------------------------------------

_SQ2 = 1.0 / np.sqrt(2.0)

GATES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=np.complex128),
    "S": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=np.complex128),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
    ),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(np.complex128),
}

for _m in GATES.values():
    _m.flags.writeable = False
