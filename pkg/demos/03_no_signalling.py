"""Locality at both levels: no action at a distance, no signalling.

Whatever operation V a remote party applies to their half of a composite
system, the local description of the other half does not move: not the
evolution-matrix grid (no action at a distance) and a fortiori not the
density operator (no signalling).  This script measures both residuals
over random evolutions, operations and states, including a bipartition
whose atoms interleave in the global order.
"""

from noumenal import SystemLattice, no_signalling_demo

for dims, a_atoms in ([(2, 2), (0,)], [(2, 2, 2), (0, 2)]):
    lattice = SystemLattice.from_dims(dims)
    result = no_signalling_demo(lattice, trials=200, seed=11, a_atoms=a_atoms)
    print(f"lattice {dims}, A = atoms {list(a_atoms)}:")
    for line in result.summary:
        print(f"  {line}")
    assert result.passed
    print()

print("the remote operation never reaches the local state, at either level")
