"""Noisy two- and three-qubit GHZ states: where does the witness fire?

Mix the GHZ projector with white noise, W = p |G0+><G0+| + (1 - p) I/d,
and compare the witness verdict with the exact partial-transpose spectrum.
"""
import numpy as np

from ghzsep import states
from ghzsep.criteria import is_k_ppt, npt_by_fidelity, search_selections
from ghzsep.partitions import Partition, enumerate_partitions

# Two qubits: the witness at k=2 is just the GHZ fidelity, (1 + 3p)/4.
print("two qubits")
print("   p    fidelity  witness>1/2  min eig of T_2")
for p in np.linspace(0, 1, 11):
    w = states.ghz_noisy((2, 2), p=p)
    flag, rep = npt_by_fidelity(w)
    eig = is_k_ppt(w, Partition.parse("1|2")).min_eigenvalues[0]
    print(f"{p:5.2f}  {rep.fidelity:8.4f}  {str(flag):>11}  {eig:+.4f}")

# Both columns switch at p = 1/3. The witness is exact for this family.

# Three qubits: scan every level k = 2, 3. The k=3 witness
#   lambda0+ - (1 - 2^(2-k)) lambda0-
# has the smaller bound 1/4 but also subtracts the |G0-> weight.
print("\nthree qubits")
for p in (0.2, 0.3, 0.45, 0.8):
    w = states.ghz_noisy((2, 2, 2), p=p)
    levels = {k: search_selections(w, k) for k in (2, 3)}
    fully_npt = all(not is_k_ppt(w, q) for q in enumerate_partitions(3, 3))
    line = "  ".join(f"k={k}: {r.value:.4f} (bound {r.bound})" for k, r in levels.items())
    print(f"p={p:4.2f}  {line}  3-partite split NPT: {fully_npt}")
