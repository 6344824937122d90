"""Evolution matrices: the noumenal states of the model.

The noumenal state of a system ``A`` under a global operation ``W`` is the
grid ``[W]^A`` whose ``(i, j)`` entry is the global-space operator
``W† (|j><i| ⊗ I) W`` (identity padding on the complement of ``A``).  The
grid is stored as one rank-4 array of shape ``(d, d, D, D)`` with ``d`` the
dimension of ``A`` and ``D`` the global dimension; ``entry(i, j)`` is a view
of the ``(i, j)`` operator.

Three algebraic laws characterize such grids and are used as the consistency
gate for products of independently built states:

* conjugate pairing:   ``entry(i, j)† == entry(j, i)``
* operator products:   ``entry(i, j) entry(k, l) == δ_il entry(k, j)``
* trace completeness:  ``sum_i entry(i, i) == I``
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import (
    BasisMismatch,
    CompatibilityViolation,
    DimensionMismatch,
    NotGlobalOperator,
    NotOrthonormal,
    NotSubsystem,
    SystemMismatch,
)
from .lattice import System
from .linalg import (
    TOL_EQ,
    TOL_UNITARY,
    UnitaryOperator,
    index_map,
    is_unitary,
    matrix_from_json,
    matrix_to_json,
    max_abs,
)

CANONICAL = "canonical"

#: Above this grid dimension the multiplicative consistency law is sampled
#: rather than checked over all O(d^4) index quadruples.
FULL_CHECK_MAX_DIM = 8
CONSISTENCY_SAMPLES = 512


class OperatorMatrix:
    """A raw ``d x d`` grid of ``D x D`` operators; shape-checked only."""

    __slots__ = ("system", "basis_tag", "entries")

    def __init__(self, system: System, entries: np.ndarray, basis_tag: str = CANONICAL):
        entries = np.ascontiguousarray(entries, dtype=np.complex128)
        d = system.dim
        big_d = system.lattice.global_dim
        if entries.shape != (d, d, big_d, big_d):
            raise DimensionMismatch(
                f"grid shape {entries.shape} does not match (d, d, D, D) = "
                f"{(d, d, big_d, big_d)} for system {system}"
            )
        entries.flags.writeable = False
        self.system = system
        self.basis_tag = basis_tag
        self.entries = entries

    @property
    def grid_dim(self) -> int:
        return self.entries.shape[0]

    @property
    def global_dim(self) -> int:
        return self.entries.shape[2]

    def entry(self, i: int, j: int) -> np.ndarray:
        """The operator at grid position ``(i, j)`` (a read-only view)."""
        return self.entries[i, j]

    def to_json(self) -> dict:
        return {
            "system": list(self.system.atom_ids),
            "basis_tag": self.basis_tag,
            "d": self.grid_dim,
            "D": self.global_dim,
            "entries": [
                [matrix_to_json(self.entries[i, j]) for j in range(self.grid_dim)]
                for i in range(self.grid_dim)
            ],
        }

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(system={self.system}, d={self.grid_dim}, "
            f"D={self.global_dim}, basis_tag={self.basis_tag!r})"
        )


class EvolutionMatrix(OperatorMatrix):
    """An operator grid satisfying the evolution-matrix consistency laws.

    Constructing one directly runs :func:`consistency_check`; the functions
    in this module that produce grids guaranteed valid by construction skip
    the check internally.
    """

    def __init__(
        self,
        system: System,
        entries: np.ndarray,
        basis_tag: str = CANONICAL,
        validate: bool = True,
    ):
        super().__init__(system, entries, basis_tag)
        if validate:
            report = consistency_check(self)
            if not report.ok:
                raise CompatibilityViolation(
                    f"grid fails the evolution-matrix laws: {report.residuals()}"
                )

    @classmethod
    def _trusted(cls, system: System, entries: np.ndarray, basis_tag: str) -> "EvolutionMatrix":
        return cls(system, entries, basis_tag, validate=False)

    @classmethod
    def from_json(cls, lattice, payload: dict, validate: bool = True) -> "EvolutionMatrix":
        system = lattice.system(payload["system"])
        entries = np.array(
            [[matrix_from_json(m) for m in row] for row in payload["entries"]],
            dtype=np.complex128,
        )
        return cls(system, entries, payload.get("basis_tag", CANONICAL), validate=validate)


@dataclass(frozen=True)
class ConsistencyReport:
    """Residuals of the three evolution-matrix laws for one grid."""

    pairing_residual: float
    product_residual: float
    trace_residual: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return max(self.pairing_residual, self.product_residual, self.trace_residual) <= self.tolerance

    def residuals(self) -> dict[str, float]:
        return {
            "pairing": self.pairing_residual,
            "product": self.product_residual,
            "trace": self.trace_residual,
        }


def consistency_check(
    m: OperatorMatrix,
    tol: float = TOL_EQ,
    sample_seed: int = 0,
) -> ConsistencyReport:
    """Test a grid against the three evolution-matrix laws.

    For grids of dimension at most :data:`FULL_CHECK_MAX_DIM` the
    multiplicative law is verified over all index quadruples; larger grids
    are sampled (:data:`CONSISTENCY_SAMPLES` quadruples from a generator
    seeded with ``sample_seed``, so repeat calls agree).
    """
    e = m.entries
    d = m.grid_dim
    pairing = max_abs(np.conj(np.swapaxes(e, 2, 3)) - np.swapaxes(e, 0, 1))
    trace = max_abs(np.einsum("iipq->pq", e) - np.eye(m.global_dim))
    if d <= FULL_CHECK_MAX_DIM:
        products = np.einsum("ijpq,klqr->ijklpr", e, e)
        expected = np.einsum("il,kjpq->ijklpq", np.eye(d), e)
        product = max_abs(products - expected)
    else:
        rng = np.random.default_rng(sample_seed)
        quads = rng.integers(0, d, size=(CONSISTENCY_SAMPLES, 4))
        # Always include quadruples that pin the delta on both branches.
        quads[0] = (0, 0, 0, 0)
        quads[1] = (0, 1, 1, 0)
        product = 0.0
        for i, j, k, l in quads:
            lhs = e[i, j] @ e[k, l]
            rhs = e[k, j] if i == l else 0.0
            product = max(product, max_abs(lhs - rhs))
    return ConsistencyReport(float(pairing), float(product), float(trace), tol)


# ---------------------------------------------------------------------------
# Construction and the noumenal operations.
# ---------------------------------------------------------------------------

def from_global_unitary(w: UnitaryOperator, a_sys: System) -> EvolutionMatrix:
    """The noumenal state ``[W]^A`` of ``a_sys`` under global operation ``w``.

    Entry ``(i, j)`` is ``W† (|j><i| ⊗ I) W``.  Equivalently, with the rows
    of ``W`` grouped by the basis index of ``a_sys``, entry ``(i, j)`` is the
    (rows ``j``)† (rows ``i``) Gram block, which is how it is computed.
    """
    if not w.system.is_global:
        raise NotGlobalOperator(f"operation acts on {w.system}, not the global system")
    rest = a_sys.complement()
    perm = index_map(a_sys, rest).reshape(-1)
    grouped = w.matrix[perm, :].reshape(a_sys.dim, rest.dim, w.system.dim)
    entries = np.einsum("jyp,iyq->ijpq", grouped.conj(), grouped)
    return EvolutionMatrix._trusted(a_sys, entries, CANONICAL)


def identity_evolution(a_sys: System) -> EvolutionMatrix:
    """``[I]^A``: the noumenal state of ``a_sys`` before any evolution."""
    lattice = a_sys.lattice
    eye = UnitaryOperator(np.eye(lattice.global_dim, dtype=np.complex128), lattice.global_system)
    return from_global_unitary(eye, a_sys)


def noumenal_action(
    u: UnitaryOperator, n: OperatorMatrix, u_basis_tag: str = CANONICAL
) -> EvolutionMatrix:
    """Apply a local operation: entry ``(i,j) -> sum_kl U_ik N_kl conj(U_jl)``.

    ``u`` must be expressed in the same basis as ``n`` (``u_basis_tag``
    names the basis the caller used for ``u``).
    """
    if u.system != n.system:
        raise SystemMismatch(f"operation on {u.system} cannot act on a state of {n.system}")
    if u_basis_tag != n.basis_tag:
        raise BasisMismatch(
            f"operation is in basis {u_basis_tag!r} but state is in {n.basis_tag!r}"
        )
    entries = np.einsum("ik,klpq,jl->ijpq", u.matrix, n.entries, u.matrix.conj())
    return EvolutionMatrix._trusted(n.system, entries, n.basis_tag)


def noumenal_partial_trace(n: OperatorMatrix, traced: System) -> EvolutionMatrix:
    """Restrict a noumenal state to a subsystem by tracing out ``traced``.

    Entry ``(i, j)`` of the result is ``sum_k n.entry((i,k), (j,k))`` with
    indices merged under the canonical atom order.  Tracing the whole system
    yields the empty system's 1x1 grid (holding the identity).
    """
    if not traced.is_subsystem_of(n.system):
        raise NotSubsystem(f"{traced} is not contained in {n.system}")
    if n.basis_tag != CANONICAL:
        raise BasisMismatch("partial traces are defined on canonical-basis grids")
    keep = n.system.difference(traced)
    perm = index_map(keep, traced)
    big_d = n.global_dim
    out = np.zeros((keep.dim, keep.dim, big_d, big_d), dtype=np.complex128)
    for k in range(traced.dim):
        rows = perm[:, k]
        out += n.entries[np.ix_(rows, rows)]
    return EvolutionMatrix._trusted(keep, out, CANONICAL)


def noumenal_product(
    na: OperatorMatrix, nb: OperatorMatrix, check: bool = True, tol: float = TOL_EQ
) -> EvolutionMatrix:
    """Combine states of disjoint systems: entry ``((i,k),(j,l)) = N^A_ij N^B_kl``.

    The product of two genuinely compatible states (restrictions of one
    global evolution) is again an evolution matrix; for independently built
    inputs that need not hold, so by default the result is gated through
    :func:`consistency_check` and rejected with ``CompatibilityViolation``
    when the laws fail.  Pass ``check=False`` in trusted pipelines.
    """
    if na.basis_tag != nb.basis_tag:
        raise BasisMismatch(
            f"cannot combine grids in bases {na.basis_tag!r} and {nb.basis_tag!r}"
        )
    perm = index_map(na.system, nb.system)  # also rejects overlapping systems
    union = na.system.union(nb.system)
    big_d = na.global_dim
    prod = np.einsum("ijpq,klqr->ikjlpr", na.entries, nb.entries)
    out = np.empty((union.dim, union.dim, big_d, big_d), dtype=np.complex128)
    out[perm[:, :, None, None], perm[None, None, :, :]] = prod
    result = EvolutionMatrix._trusted(union, out, na.basis_tag)
    if check:
        report = consistency_check(result, tol)
        if not report.ok:
            raise CompatibilityViolation(
                f"states on {na.system} and {nb.system} are not compatible: "
                f"{report.residuals()}"
            )
    return result


def noumenal_distance(n1: OperatorMatrix, n2: OperatorMatrix) -> float:
    """Largest absolute entry difference between two grids on one system."""
    if n1.system != n2.system:
        raise SystemMismatch(f"cannot compare states of {n1.system} and {n2.system}")
    if n1.basis_tag != n2.basis_tag:
        raise BasisMismatch(
            f"cannot compare grids in bases {n1.basis_tag!r} and {n2.basis_tag!r}"
        )
    return max_abs(n1.entries - n2.entries)


def noumenal_equal(n1: OperatorMatrix, n2: OperatorMatrix, tol: float = TOL_EQ) -> bool:
    """Elementwise equality of two grids within ``tol``."""
    return noumenal_distance(n1, n2) <= tol


# ---------------------------------------------------------------------------
# Change of basis.
# ---------------------------------------------------------------------------

def _basis_tag_for(matrix: np.ndarray) -> str:
    digest = hashlib.sha256(np.ascontiguousarray(matrix).tobytes()).hexdigest()
    return f"basis:{digest[:12]}"


def change_of_basis(
    n: OperatorMatrix,
    b_from: np.ndarray,
    b_to: np.ndarray,
    to_tag: str | None = None,
) -> EvolutionMatrix:
    """Re-express a grid in another orthonormal basis of its system's space.

    ``b_from`` and ``b_to`` hold the basis vectors as columns, in canonical
    coordinates; ``b_from`` must be the basis the grid is currently indexed
    by.  Entry ``(k, l)`` of the result is ``sum_ij <k|i> entry(i,j) <j|l>``.
    ``to_tag`` names the target basis (pass ``"canonical"`` when mapping
    back); by default a content-derived tag is used.
    """
    d = n.grid_dim
    b_from = np.asarray(b_from, dtype=np.complex128)
    b_to = np.asarray(b_to, dtype=np.complex128)
    for name, basis in (("source", b_from), ("target", b_to)):
        if basis.shape != (d, d):
            raise DimensionMismatch(f"{name} basis is {basis.shape}, expected {(d, d)}")
        if not is_unitary(basis, TOL_UNITARY):
            raise NotOrthonormal(f"{name} basis columns are not orthonormal")
    if n.basis_tag == CANONICAL and max_abs(b_from - np.eye(d)) > TOL_UNITARY:
        raise BasisMismatch("grid is canonical-basis but the source basis is not the identity")
    overlap = b_to.conj().T @ b_from  # <k|i>
    entries = np.einsum("ki,ijpq,lj->klpq", overlap, n.entries, overlap.conj())
    tag = to_tag if to_tag is not None else _basis_tag_for(b_to)
    return EvolutionMatrix._trusted(n.system, entries, tag)
