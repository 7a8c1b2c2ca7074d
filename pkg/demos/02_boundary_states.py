"""States that sit exactly on the witness bound.

For a k-partite split the GHZ pairs reached by transposing unions of
blocks form an index set tau with 2^(k-1) - 1 members. Weight 2^(1-k) on
|G0+> plus 2^(-k) on each tau pair gives a k-PPT state whose witness
value equals the bound.
"""
from ghzsep import states
from ghzsep.criteria import is_k_ppt, witness_value
from ghzsep.hilbert import TwoLevelSelection
from ghzsep.partitions import enumerate_partitions, necessary_subsets, tau_of

n = 4
sel = TwoLevelSelection.canonical(n)
for k in range(2, n + 1):
    print(f"--- k = {k}, bound = {2.0 ** (1 - k)}")
    for p in enumerate_partitions(n, k)[:4]:
        w = states.boundary_state(p)
        res = is_k_ppt(w, p)
        subsets = ["{" + ",".join(map(str, sorted(s))) + "}" for s in necessary_subsets(p)]
        print(
            f"{str(p):>12}  tau={sorted(tau_of(p))}  value={witness_value(w, k, sel).value:.12f}  "
            f"k-PPT={res.ppt}  transposed: {' '.join(subsets)}"
        )

# The same construction in a qutrit-qubit-qutrit space, on a non-trivial
# two-level selection: only the selected 2x2x2 block is populated.
from ghzsep.partitions import Partition

p = Partition.parse("1,3|2")
sel = TwoLevelSelection(((2, 0), (1, 0), (0, 1)))
w = states.boundary_state(p, dims=(3, 2, 3), sel=sel)
print("\nqutrit example:", witness_value(w, 2, sel).value, "k-PPT:", is_k_ppt(w, p).ppt)
