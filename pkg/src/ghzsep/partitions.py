"""k-partite splits of the sites ``1..n``, their block-union families and
the index set of GHZ coefficients those unions reach.
"""

from dataclasses import dataclass
from itertools import combinations

from .ghz import g_of
from .hilbert import ValidationError

MAX_SITES = 12


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering ``1..n``, sorted by minimum element."""

    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(int(s) for s in b)) for b in self.blocks), key=min_or_zero))
        seen = [s for b in blocks for s in b]
        if any(not b for b in blocks):
            raise ValidationError("partition has an empty block")
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValidationError(f"blocks {blocks} do not partition 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self):
        return len(self.blocks)

    @classmethod
    def parse(cls, text, n=None):
        """Parse the ``"1|2,3"`` syntax."""
        try:
            blocks = [tuple(int(s) for s in part.split(",")) for part in text.split("|")]
        except ValueError as exc:
            raise ValidationError(f"bad partition syntax {text!r}") from exc
        if n is None:
            n = max(max(b) for b in blocks)
        return cls(n, tuple(blocks))

    def __str__(self):
        return "|".join(",".join(str(s) for s in b) for b in self.blocks)


def min_or_zero(block):
    return min(block) if block else 0


def _set_partitions(items, k):
    # Restricted-growth recursion: the first item opens a block, each
    # further item joins an existing block or opens a new one.
    if k == 0:
        if not items:
            yield []
        return
    if len(items) < k:
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest, k - 1):
        yield [[first]] + p
    for p in _set_partitions(rest, k):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def enumerate_partitions(n, k):
    """All partitions of ``1..n`` into exactly ``k`` blocks, in canonical order.

    The count is the Stirling number of the second kind ``S(n, k)``.
    """
    if not 1 <= k <= n <= MAX_SITES:
        raise ValidationError(f"need 1 <= k <= n <= {MAX_SITES}, got n={n}, k={k}")
    out = {Partition(n, tuple(tuple(b) for b in p)) for p in _set_partitions(list(range(1, n + 1)), k)}
    return sorted(out, key=lambda p: p.blocks)


def union_family(p):
    """All ``2^k`` unions of blocks of ``p``, including the empty and full set."""
    fam = []
    for r in range(p.k + 1):
        for combo in combinations(p.blocks, r):
            fam.append(frozenset(s for b in combo for s in b))
    return fam


def necessary_subsets(p):
    """One representative per complement pair of the union family.

    The ``{empty, full}`` pair is dropped and each remaining pair is
    represented by the member without site ``n``, giving ``2^(k-1) - 1``
    subsets.
    """
    full = frozenset(range(1, p.n + 1))
    reps = [a for a in union_family(p) if p.n not in a and a]
    assert all(full - a in union_family(p) for a in reps)
    return sorted(reps, key=lambda a: (len(a), sorted(a)))


def tau_of(p):
    """Nonzero ``g`` images of the block unions; has ``2^(k-1) - 1`` members."""
    tau = frozenset(g_of(a, p.n) for a in union_family(p)) - {0}
    if len(tau) != (1 << (p.k - 1)) - 1:
        raise RuntimeError(f"|tau| = {len(tau)} for partition {p}; expected {(1 << (p.k - 1)) - 1}")
    return tau
