"""Product-space bookkeeping: site dimensions, two-level selections,
subspace embedding and partial transposition.

Sites are numbered ``1..n`` at the public interface and site 1 is the
most significant digit of a flat index.
"""

from dataclasses import dataclass
from math import prod

import numpy as np

from .linalg import HERMITICITY_TOL, check_hermitian, hermitian_eigenvalues

MAX_DIM = 1024
TRACE_TOL = 1e-9
DENSITY_PSD_TOL = 1e-8


class ValidationError(ValueError):
    """Input data violates a structural invariant."""


def check_dims(dims):
    """Validate per-site dimensions and return them as a tuple of ints."""
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2:
        raise ValidationError(f"need at least 2 sites, got {len(dims)}")
    if any(d < 2 for d in dims):
        raise ValidationError(f"every site dimension must be >= 2, got {dims}")
    total = prod(dims)
    if total > MAX_DIM:
        raise ValidationError(f"total dimension {total} exceeds cap {MAX_DIM}")
    return dims


def check_subset(beta, n):
    """Validate a 1-based site subset and return it as a frozenset."""
    beta = frozenset(int(m) for m in beta)
    bad = [m for m in beta if not 1 <= m <= n]
    if bad:
        raise ValidationError(f"sites {sorted(bad)} outside 1..{n}")
    return beta


def flat_index(multi, dims):
    idx = 0
    if len(multi) != len(dims):
        raise ValidationError(f"multi-index length {len(multi)} != {len(dims)} sites")
    for x, d in zip(multi, dims):
        if not 0 <= x < d:
            raise ValidationError(f"local index {x} out of range for dimension {d}")
        idx = idx * d + x
    return idx


def multi_index(flat, dims):
    if not 0 <= flat < prod(dims):
        raise ValidationError(f"flat index {flat} out of range")
    out = []
    for d in reversed(dims):
        flat, r = divmod(flat, d)
        out.append(r)
    return tuple(reversed(out))


@dataclass(frozen=True)
class TwoLevelSelection:
    """Per-site ordered pair ``(a_j, b_j)`` of local basis indices.

    ``a_j`` plays the role of ``|0>`` and ``b_j`` of ``|1>`` at site ``j``.
    Order matters: swapping the pair at a single site changes the GHZ
    vectors built on the subspace.
    """

    pairs: tuple

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def canonical(cls, n):
        return cls(((0, 1),) * n)

    @classmethod
    def parse(cls, text):
        """Parse ``"a1,b1;a2,b2;..."``."""
        try:
            pairs = []
            for chunk in text.split(";"):
                a, b = chunk.split(",")
                pairs.append((int(a), int(b)))
        except ValueError as exc:
            raise ValidationError(f"bad selection syntax {text!r}") from exc
        return cls(tuple(pairs))

    def __str__(self):
        return ";".join(f"{a},{b}" for a, b in self.pairs)

    @property
    def n(self):
        return len(self.pairs)

    def validate(self, dims):
        if len(self.pairs) != len(dims):
            raise ValidationError(f"selection has {len(self.pairs)} sites, state has {len(dims)}")
        for j, ((a, b), d) in enumerate(zip(self.pairs, dims), start=1):
            if not (0 <= a < d and 0 <= b < d) or a == b:
                raise ValidationError(f"invalid pair ({a},{b}) at site {j} with dimension {d}")
        return self

    def flipped(self):
        """The selection with every site's pair swapped."""
        return TwoLevelSelection(tuple((b, a) for a, b in self.pairs))

    def subspace_indices(self, dims):
        """Flat indices of the ``2^n`` embedded basis vectors, ordered by bit-string."""
        self.validate(dims)
        idx = np.zeros(1, dtype=np.int64)
        for (a, b), d in zip(self.pairs, dims):
            # position = 2 * old_position + bit, so site 1 ends up most significant
            idx = np.stack([idx * d + a, idx * d + b], axis=1).ravel()
        return idx


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Validated state on the product space with site dimensions ``dims``."""

    dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        dims = check_dims(self.dims)
        m = check_hermitian(self.matrix)
        if m.shape[0] != prod(dims):
            raise ValidationError(f"matrix dimension {m.shape[0]} != prod(dims) = {prod(dims)}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def validated(cls, dims, matrix, trace_tol=TRACE_TOL, psd_tol=DENSITY_PSD_TOL):
        """Build and enforce unit trace and positivity."""
        w = cls(dims, matrix)
        tr = np.trace(w.matrix).real
        if abs(tr - 1.0) > trace_tol:
            raise ValidationError(f"trace {tr:.12g} deviates from 1 by more than {trace_tol:g}")
        lo = hermitian_eigenvalues(w.matrix)[0]
        if lo < -psd_tol:
            raise ValidationError(f"minimum eigenvalue {lo:.3g} below -{psd_tol:g}")
        return w

    @property
    def n(self):
        return len(self.dims)

    @property
    def dim(self):
        return self.matrix.shape[0]


def _dims_of(w, dims):
    if isinstance(w, DensityOperator):
        return w.matrix, w.dims
    if dims is None:
        raise ValidationError("dims are required for a bare matrix")
    return check_hermitian(w, tol=np.inf), check_dims(dims)


def embed_basis_vector(bits, sel, dims):
    """Unit vector of the product basis state picked by ``bits`` through ``sel``."""
    dims = check_dims(dims)
    sel.validate(dims)
    if len(bits) != len(dims):
        raise ValidationError(f"bit-string length {len(bits)} != {len(dims)} sites")
    local = [pair[int(bit)] for bit, pair in zip(bits, sel.pairs)]
    v = np.zeros(prod(dims), dtype=complex)
    v[flat_index(local, dims)] = 1.0
    return v


def isometry(sel, dims):
    """``d x 2^n`` matrix whose columns are the embedded basis vectors."""
    dims = check_dims(dims)
    idx = sel.subspace_indices(dims)
    v = np.zeros((prod(dims), idx.size), dtype=complex)
    v[idx, np.arange(idx.size)] = 1.0
    return v


def embed_operator(m, sel, dims):
    """Return ``M (+) 0``: the ``2^n``-dim operator placed on the selected subspace."""
    dims = check_dims(dims)
    m = check_hermitian(m, tol=np.inf)
    if m.shape[0] != 1 << len(dims):
        raise ValidationError(f"operator dimension {m.shape[0]} != 2^{len(dims)}")
    idx = sel.subspace_indices(dims)
    out = np.zeros((prod(dims), prod(dims)), dtype=complex)
    out[np.ix_(idx, idx)] = m
    return out


def restrict_operator(w, sel, dims=None):
    """Compressed ``2^n x 2^n`` block ``V^dagger W V`` on the selected subspace."""
    m, dims = _dims_of(w, dims)
    idx = sel.subspace_indices(dims)
    return m[np.ix_(idx, idx)]


def partial_transpose(w, beta, dims=None):
    """Transpose the tensor factors of the sites in ``beta`` (1-based).

    Works by a pure index permutation, so involution, trace and
    Hermiticity hold exactly.
    """
    m, dims = _dims_of(w, dims)
    n = len(dims)
    beta = check_subset(beta, n)
    if not beta:
        return m.copy()
    t = m.reshape(dims + dims)
    axes = list(range(2 * n))
    for site in beta:
        j = site - 1
        axes[j], axes[n + j] = n + j, j
    return t.transpose(axes).reshape(m.shape).copy()


__all__ = [
    "MAX_DIM",
    "DensityOperator",
    "TwoLevelSelection",
    "ValidationError",
    "HERMITICITY_TOL",
    "check_dims",
    "check_subset",
    "embed_basis_vector",
    "embed_operator",
    "flat_index",
    "isometry",
    "multi_index",
    "partial_transpose",
    "restrict_operator",
]
