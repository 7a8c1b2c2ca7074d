"""Finding a GHZ state hidden in a relabelled qutrit basis.

The witness needs a choice of two local basis states per site. Here a
three-qutrit GHZ-like state lives on levels that differ from site to site;
the exhaustive search over selections finds them.
"""
import numpy as np

from ghzsep import states
from ghzsep.criteria import classify, search_selections, witness_value
from ghzsep.hilbert import DensityOperator, TwoLevelSelection

dims = (3, 3, 3)
hidden = TwoLevelSelection(((2, 0), (1, 2), (0, 1)))
w = states.ghz_noisy(dims, sel=hidden, p=0.6)

print("canonical selection value:", witness_value(w, 2, TwoLevelSelection.canonical(3)).value)
best = search_selections(w, 2, "exhaustive")
print("best selection:", best.selection, "value:", round(best.value, 6), "searched:", best.searched)
# The reported selection is `hidden` or its global swap, which gives the same value.

rep = classify(w, oracle=True)
print("min violated k:", rep.min_violated_k, "->", rep.conclusion)
print("oracle contradictions:", rep.oracle_contradictions())

# A local phase on one site turns |G0+> into |G0->. The search covers this
# by trying both orientations.
z = np.diag([1, 1, -1])  # flips the sign of level 2 at site 1
u = np.kron(z, np.eye(9))
flipped = DensityOperator(dims, u @ w.matrix @ u.conj().T)
r = search_selections(flipped, 2)
print("after phase flip: value", round(r.value, 6), "swapped orientation:", r.swapped)
