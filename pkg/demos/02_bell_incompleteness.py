"""Why the density operator cannot be the complete local state.

Prepare two qubits in the odd-parity Bell state.  Flipping qubit A changes
what can be observed jointly (the state moves to the even-parity Bell
state), yet A's own density operator stays exactly I/2.  At the
evolution-matrix level the flip visibly changes A's state, and flipping
both qubits changes the joint noumenal state while leaving every
observable untouched.  The map from noumenal to phenomenal states is
therefore many-to-one: observables underdetermine the local reality that
carries them.
"""

import numpy as np

from noumenal import GATES, SystemLattice, bell_incompleteness_demo, matrix_from_json

lattice = SystemLattice.from_dims([2, 2], labels=["A", "B"])
result = bell_incompleteness_demo(lattice)

print("verdicts:")
for name, holds in result.findings["verdicts"].items():
    print(f"  {name}: {holds}")

marginal = matrix_from_json(result.findings["phenomenal_a"])
print("\nA's density operator before the flip:")
print(np.array_str(marginal, precision=6, suppress_small=True))
marginal_after = matrix_from_json(result.findings["phenomenal_a_after_flip"])
print("A's density operator after the flip:")
print(np.array_str(marginal_after, precision=6, suppress_small=True))

margins = result.findings["margins"]
print(f"\nnoumenal change caused by the flip (max entry gap): {margins['c']:.3f}")
print(f"noumenal change caused by flipping both qubits:      {margins['d']:.3f}")
print(f"phenomenal change caused by flipping both qubits:    "
      f"{result.findings['residuals']['d_phenomenal']:.2e}")

print("\nnarrative:")
for line in result.summary:
    print(f"  {line}")

# The verdicts survive re-expressing every grid in a rotated local basis.
rotated = bell_incompleteness_demo(lattice, local_basis=GATES["H"])
print(f"\nsame verdicts in the rotated basis: {all(rotated.findings['verdicts'].values())}")
assert result.passed and rotated.passed
