"""GHZ basis on ``n`` two-level sites and the subset-to-index maps.

Basis kets are indexed by bit-strings with site 1 as the most significant
bit. ``ghz_vector(n, j, sign)`` is

    (|j>|0> + sign |2^(n-1) - j - 1>|1>) / sqrt(2)

with ``|j>`` the ``(n-1)``-bit ket on sites ``1..n-1``.
"""

from dataclasses import dataclass

import numpy as np

from .hilbert import check_subset


@dataclass(frozen=True)
class GhzLabel:
    n: int
    j: int
    sign: int = +1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.j < 1 << (self.n - 1):
            raise ValueError(f"j={self.j} outside [0, {(1 << (self.n - 1)) - 1}]")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")


def ghz_partner_indices(n, j):
    """Flat indices of ``|j>|0>`` and ``|2^(n-1)-j-1>|1>`` in ``C^(2^n)``."""
    half = 1 << (n - 1)
    return 2 * j, 2 * (half - j - 1) + 1


def ghz_vector(n, j=0, sign=+1):
    label = GhzLabel(n, j, sign)
    x, y = ghz_partner_indices(label.n, label.j)
    v = np.zeros(1 << n, dtype=complex)
    v[x] = 1.0 / np.sqrt(2.0)
    v[y] = label.sign / np.sqrt(2.0)
    return v


def ghz_projector(n, j=0, sign=+1):
    v = ghz_vector(n, j, sign)
    return np.outer(v, v.conj())


def ghz_basis(n):
    """All ``2^n`` GHZ vectors as columns, ordered ``(0,+), (0,-), (1,+), ...``."""
    cols = [ghz_vector(n, j, s) for j in range(1 << (n - 1)) for s in (1, -1)]
    return np.column_stack(cols)


def l_of(beta, n):
    """Integer with binary digits ``l_1...l_n``, ``l_m = 1`` iff ``m`` in ``beta``."""
    beta = check_subset(beta, n)
    return sum(1 << (n - m) for m in beta)


def j_of(beta, n):
    """Integer formed by the first ``n-1`` digits of ``l_of``."""
    return l_of(beta, n) >> 1


def g_of(beta, n):
    """Two-to-one map from site subsets to coefficient indices.

    ``j(beta)`` when ``l(beta)`` is even, ``2^(n-1) - j(beta) - 1`` when odd.
    A subset and its complement share the same image.
    """
    l = l_of(beta, n)
    j = l >> 1
    if l % 2 == 0:
        return j
    return (1 << (n - 1)) - j - 1
