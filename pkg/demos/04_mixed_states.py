"""Reaching every mixed state: the anchored lift.

With a pure global reference state, the epimorphism only reaches reduced
states of pure global states.  Pairing each grid with an explicit global
anchor removes the restriction: for any target density operator rho_A, the
identity grid anchored at rho_A ⊗ I/d maps exactly onto rho_A.  The lifted
operations act on the grid and carry the anchor through unchanged.
"""

import numpy as np

from noumenal import (
    DensityOperator,
    ExtendedNoumenalState,
    SystemLattice,
    ext_action,
    ext_epimorphism,
    ext_product,
    ext_trace,
    from_global_unitary,
    haar_unitary,
    mixed_state_witness,
    random_density_matrix,
    random_pure_state,
)

lattice = SystemLattice.from_dims([2, 2])
a_sys = lattice.atom(0)
rng = np.random.default_rng(5)

# A rank-2 mixed target on A, built as a two-component mixture.
v1, v2 = random_pure_state(2, rng), random_pure_state(2, rng)
target = 0.7 * np.outer(v1, v1.conj()) + 0.3 * np.outer(v2, v2.conj())
print("target mixed state on A:")
print(np.array_str(target, precision=4, suppress_small=True))

witness = mixed_state_witness(DensityOperator(target, a_sys))
reached = ext_epimorphism(witness)
print(f"witness reproduces it exactly: gap {np.abs(reached.matrix - target).max():.2e}")

# Lifted operations: act, restrict, recombine; the anchor never moves.
s = lattice.global_system
anchor = DensityOperator(random_density_matrix(4, rng), s)
state = ExtendedNoumenalState(from_global_unitary(haar_unitary(s, rng), s), anchor)

u = haar_unitary(a_sys, rng)
acted = ext_action(u, ext_trace(state, a_sys.complement()))
print(f"\nanchor is carried through an action unchanged: "
      f"{np.abs(acted.rho.matrix - anchor.matrix).max():.2e}")

rebuilt = ext_product(
    ext_trace(state, a_sys.complement()), ext_trace(state, a_sys), check=False
)
print(f"anchored restrictions recombine to the joint state: "
      f"{np.abs(rebuilt.n.entries - state.n.entries).max():.2e}")
