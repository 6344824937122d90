"""A first tour: the lattice of systems and the two state descriptions.

Systems are subsets of dimensioned atoms.  Every system carries two states
at once: a density operator (what is locally observable) and an
evolution-matrix grid (the complete local description).  This script builds
both for a small random evolution and checks the algebra that makes the
grid a genuine state: its entries pair up under conjugation, multiply by
contracting indices, and sum to the identity along the diagonal.
"""

import numpy as np

from noumenal import (
    SystemLattice,
    consistency_check,
    default_anchor,
    from_global_unitary,
    haar_unitary,
    noumenal_partial_trace,
    partial_trace,
    phi,
)

lattice = SystemLattice.from_dims([2, 3], labels=["left", "right"])
left, right = lattice.atom(0), lattice.atom(1)
everything = lattice.global_system

print(f"lattice: {lattice}")
print(f"dim(left) = {left.dim}, dim(right) = {right.dim}, dim(global) = {everything.dim}")
print(f"complement of left: {left.complement()},  left ∪ right: {left | right}")

# A random global evolution, applied to the fixed |00> reference state.
rng = np.random.default_rng(1)
w = haar_unitary(everything, rng)
anchor = default_anchor(lattice)

# The noumenal state of `left` is a 2x2 grid of 6x6 operators.
grid = from_global_unitary(w, left)
print(f"\nnoumenal state of {left}: grid {grid.grid_dim}x{grid.grid_dim} "
      f"of {grid.global_dim}x{grid.global_dim} operators")

report = consistency_check(grid)
print("consistency residuals:", {k: f"{v:.1e}" for k, v in report.residuals().items()})
assert report.ok

# The phenomenal state is the image of the grid under the epimorphism,
# and it agrees with the directly reduced evolved state.
rho_left = phi(anchor, grid)
evolved = w.matrix @ anchor.matrix @ w.matrix.conj().T
direct = partial_trace(evolved, everything, right)
print("\nphenomenal state of left (via the grid):")
print(np.array_str(rho_left.matrix, precision=3, suppress_small=True))
print(f"gap to the directly reduced state: {np.abs(rho_left.matrix - direct).max():.2e}")

# Restriction works at the noumenal level too: the grid of a subsystem is
# the partial trace of the composite grid.
joint = from_global_unitary(w, everything)
restricted = noumenal_partial_trace(joint, right)
print(f"trace of the joint grid equals the direct grid: "
      f"{np.abs(restricted.entries - grid.entries).max():.2e}")
