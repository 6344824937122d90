"""Nothing depends on the canonical basis choice.

Grids are indexed by an orthonormal basis of their system's space.  The
canonical per-atom bases are a convenience: re-expressing a grid in any
other orthonormal basis is a linear relabeling that composes, inverts, and
commutes with building the grid directly in the new basis.
"""

import numpy as np

from noumenal import (
    SystemLattice,
    change_of_basis,
    embed_operator,
    from_global_unitary,
    haar_random_unitary,
    haar_unitary,
    noumenal_distance,
)

lattice = SystemLattice.from_dims([2, 2, 2])
a_sys = lattice.system((0, 2))  # non-contiguous on purpose
rng = np.random.default_rng(9)

w = haar_unitary(lattice.global_system, rng)
state = from_global_unitary(w, a_sys)
eye = np.eye(a_sys.dim)

new_basis = haar_random_unitary(a_sys.dim, rng)
rotated = change_of_basis(state, eye, new_basis, "rotated")
print(f"grid re-expressed in a random basis (tag {rotated.basis_tag!r})")

# Building the grid directly in the new basis gives the same entries.
direct = np.empty_like(state.entries)
for k in range(a_sys.dim):
    for l in range(a_sys.dim):
        flip = np.outer(new_basis[:, l], new_basis[:, k].conj())
        direct[k, l] = w.matrix.conj().T @ embed_operator(flip, a_sys) @ w.matrix
print(f"matches direct construction: {np.abs(rotated.entries - direct).max():.2e}")

# The relabelings form a groupoid: identity, composition, inverse.
same = change_of_basis(state, eye, eye, "canonical")
print(f"identity relabeling: {noumenal_distance(same, state):.2e}")

third = haar_random_unitary(a_sys.dim, rng)
chained = change_of_basis(rotated, new_basis, third, "third")
straight = change_of_basis(state, eye, third, "third")
print(f"composition: {noumenal_distance(chained, straight):.2e}")

back = change_of_basis(rotated, new_basis, eye, "canonical")
print(f"round trip: {noumenal_distance(back, state):.2e}")
