"""Witness-based classification of multipartite states.

For a state ``W`` and a two-level selection the GHZ-diagonal coefficients
``lambda0+``, ``lambda0-`` and ``lambda_j`` are read off the selected
``2^n``-dimensional block. The witness

    Y(k) = (|G0+><G0+| - (1 - 2^(2-k)) |G0-><G0-|) (+) 0

has expectation at most ``2^(1-k)`` on every state that is k-PPT (hence on
every k-separable state) with respect to some k-partite split. A value
above the bound for *some* selection rules out k'-PPT and k'-separability
for every ``k' >= k``.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Optional

import numpy as np

from . import ghz
from .hilbert import (
    DensityOperator,
    TwoLevelSelection,
    ValidationError,
    check_subset,
    embed_operator,
    partial_transpose,
    restrict_operator,
)
from .linalg import expectation, min_eigenvalue
from .partitions import Partition, enumerate_partitions, necessary_subsets

DECISION_TOL = 1e-8
PPT_TOL = 1e-8
COEFF_TOL = 1e-9
EXHAUSTIVE_CAP = 10**6
ORACLE_MAX_SITES = 8
THREADS_ENV = "GHZSEP_THREADS"


def _default_workers():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class DurCoefficients:
    """Coefficients of a GHZ-diagonal operator on ``n`` two-level sites.

    ``lambdas[j - 1]`` is the common weight of ``|Gj+>`` and ``|Gj->`` for
    ``j = 1 .. 2^(n-1) - 1``.
    """

    n: int
    lambda0_plus: float
    lambda0_minus: float
    lambdas: tuple

    def __post_init__(self):
        lambdas = tuple(float(x) for x in self.lambdas)
        object.__setattr__(self, "lambdas", lambdas)
        if self.n < 2:
            raise ValidationError(f"n must be >= 2, got {self.n}")
        if len(lambdas) != (1 << (self.n - 1)) - 1:
            raise ValidationError(f"expected {(1 << (self.n - 1)) - 1} lambdas for n={self.n}, got {len(lambdas)}")
        if min((self.lambda0_plus, self.lambda0_minus) + lambdas) < -COEFF_TOL:
            raise ValidationError("coefficients must be non-negative")
        if self.trace > 1 + COEFF_TOL:
            raise ValidationError(f"coefficients exceed unit trace ({self.trace:.12g})")

    @property
    def delta(self):
        return self.lambda0_plus - self.lambda0_minus

    @property
    def trace(self):
        return self.lambda0_plus + self.lambda0_minus + 2.0 * sum(self.lambdas)

    def lam(self, j):
        """``lambda_j`` for ``j >= 1``."""
        if not 1 <= j <= len(self.lambdas):
            raise IndexError(j)
        return self.lambdas[j - 1]

    def swapped(self):
        """Same coefficients with ``lambda0+`` and ``lambda0-`` exchanged."""
        return DurCoefficients(self.n, self.lambda0_minus, self.lambda0_plus, self.lambdas)

    @classmethod
    def parse(cls, n, text):
        """Parse ``"l0+,l0-,l1,...,l_{2^(n-1)-1}"``."""
        try:
            vals = [float(x) for x in text.replace(" ", "").split(",")]
        except ValueError as exc:
            raise ValidationError(f"bad coefficient list {text!r}") from exc
        if len(vals) < 2:
            raise ValidationError("need at least lambda0+ and lambda0-")
        return cls(n, vals[0], vals[1], tuple(vals[2:]))


def dur_state(c):
    """The ``2^n x 2^n`` GHZ-diagonal operator with coefficients ``c``."""
    m = c.lambda0_plus * ghz.ghz_projector(c.n, 0, +1)
    m = m + c.lambda0_minus * ghz.ghz_projector(c.n, 0, -1)
    for j, lam in enumerate(c.lambdas, start=1):
        if lam:
            m = m + lam * (ghz.ghz_projector(c.n, j, +1) + ghz.ghz_projector(c.n, j, -1))
    return m


def extract_dur_coefficients(w, sel):
    """Read the GHZ-diagonal coefficients of ``w`` on the selected subspace.

    Each coefficient is the expectation of an embedded GHZ projector (the
    ``j`` coefficients average the ``+`` and ``-`` projectors), evaluated on
    the compressed ``2^n`` block.
    """
    rho = restrict_operator(w, sel)
    n = sel.n
    basis = ghz.ghz_basis(n)
    # diagonal of G^dagger rho G in the GHZ basis
    diag = np.einsum("ia,ij,ja->a", basis.conj(), rho, basis).real
    lam0p, lam0m = diag[0], diag[1]
    lambdas = 0.5 * (diag[2::2] + diag[3::2])
    return DurCoefficients(n, float(lam0p), float(lam0m), tuple(lambdas))


@dataclass(frozen=True)
class AnalyticVerdict:
    """Outcome of the closed-form PPT test for one transposed subset.

    ``margin`` is ``lambda_g - |delta| / 2``, the smallest eigenvalue of the
    transposed operator in the affected two-dimensional block; ``trivial``
    marks the empty and full subsets, which never break positivity.
    """

    ppt: bool
    margin: float
    g: int
    trivial: bool = False
    equality: bool = False

    def __bool__(self):
        return self.ppt


def dur_ppt_analytic(c, beta, tol=PPT_TOL):
    """Closed-form positivity of the partial transpose of ``dur_state(c)``.

    PPT iff ``|delta| <= 2 lambda_g(beta)``. ``tol`` is applied on the
    eigenvalue scale, i.e. to ``lambda_g - |delta|/2``, so the verdict
    agrees with ``is_psd(partial_transpose(...), tol)``.
    """
    beta = check_subset(beta, c.n)
    if not beta or len(beta) == c.n:
        # transposing nothing or everything preserves positivity
        return AnalyticVerdict(True, np.inf, 0, trivial=True)
    if c.delta < 0:
        c = c.swapped()
    g = ghz.g_of(beta, c.n)
    margin = c.lam(g) - 0.5 * c.delta
    return AnalyticVerdict(margin >= -tol, margin, g, equality=abs(margin) <= tol)


@dataclass(frozen=True)
class KPptResult:
    """Brute-force k-PPT verdict for one partition."""

    partition: Partition
    subsets: tuple
    min_eigenvalues: tuple
    tol: float

    @property
    def verdicts(self):
        return tuple(e >= -self.tol for e in self.min_eigenvalues)

    @property
    def ppt(self):
        return all(self.verdicts)

    def __bool__(self):
        return self.ppt


def is_k_ppt(w, p, tol=PPT_TOL, workers=None):
    """Check positivity of every necessary partial transpose for partition ``p``."""
    if p.n != w.n:
        raise ValidationError(f"partition over {p.n} sites, state has {w.n}")
    subsets = tuple(necessary_subsets(p))
    workers = _default_workers() if workers is None else workers

    def probe(beta):
        return min_eigenvalue(partial_transpose(w, beta))

    if workers > 1 and len(subsets) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            eigs = tuple(pool.map(probe, subsets))
    else:
        eigs = tuple(probe(b) for b in subsets)
    return KPptResult(p, subsets, eigs, tol)


def witness_coefficient(k):
    """Weight ``1 - 2^(2-k)`` of the ``|G0->`` projector in the witness."""
    return 1.0 - 2.0 ** (2 - k)


def witness_bound(k):
    return 2.0 ** (1 - k)


def _check_k(k, n):
    if not 2 <= k <= n:
        raise ValidationError(f"k must lie in [2, {n}], got {k}")


def witness_operator(k, sel, dims, swapped=False):
    """Embedded witness ``Y(k)`` for the selection ``sel``.

    With ``swapped=True`` the roles of ``|G0+>`` and ``|G0->`` are exchanged,
    which is the same operator built on the selection with a sign flip of
    one site's ``|1>``.
    """
    n = len(dims)
    _check_k(k, n)
    top, bottom = (-1, +1) if swapped else (+1, -1)
    small = ghz.ghz_projector(n, 0, top) - witness_coefficient(k) * ghz.ghz_projector(n, 0, bottom)
    return embed_operator(small, sel, dims)


@dataclass(frozen=True)
class WitnessReport:
    k: int
    selection: TwoLevelSelection
    value: float
    bound: float
    violated: bool
    swapped: bool = False
    lambda0_plus: float = 0.0
    lambda0_minus: float = 0.0
    searched: int = 1

    @property
    def fidelity(self):
        """GHZ overlap for the reported orientation."""
        return self.lambda0_minus if self.swapped else self.lambda0_plus


def _report(k, sel, lp, lm, swapped, tol, searched=1):
    c = witness_coefficient(k)
    value = (lm - c * lp) if swapped else (lp - c * lm)
    bound = witness_bound(k)
    return WitnessReport(k, sel, float(value), bound, bool(value > bound + tol), swapped, float(lp), float(lm), searched)


def witness_value(w, k, sel, swapped=False, tol=DECISION_TOL):
    """Witness expectation from the extracted coefficients.

    Equals ``expectation(w.matrix, witness_operator(k, sel, w.dims, swapped))``.
    """
    _check_k(k, w.n)
    c = extract_dur_coefficients(w, sel)
    return _report(k, sel, c.lambda0_plus, c.lambda0_minus, swapped, tol)


def witness_value_by_expectation(w, k, sel, swapped=False):
    return expectation(w.matrix, witness_operator(k, sel, w.dims, swapped))


# -- selection search ------------------------------------------------------


def _ordered_pairs(d):
    return [(a, b) for a in range(d) for b in range(d) if a != b]


def exhaustive_count(dims):
    """Number of ordered selections modulo the global swap."""
    return prod(d * (d - 1) for d in dims) // 2


def _exhaustive_table(dims):
    # lexicographic over sites; site 1 restricted to a < b (global-swap quotient)
    per_site = [np.array(_ordered_pairs(d)) for d in dims]
    per_site[0] = per_site[0][per_site[0][:, 0] < per_site[0][:, 1]]
    grids = np.meshgrid(*[np.arange(len(p)) for p in per_site], indexing="ij")
    cols = [per_site[j][g.ravel()] for j, g in enumerate(grids)]
    return np.concatenate(cols, axis=1)  # shape (N, 2n): a1, b1, a2, b2, ...


def _random_table(dims, count, seed):
    rng = np.random.default_rng(seed)
    cols = []
    for d in dims:
        a = rng.integers(0, d, size=count)
        b = rng.integers(0, d - 1, size=count)
        b = b + (b >= a)
        cols.extend([a, b])
    return np.stack(cols, axis=1)


def parse_strategy(strategy):
    """Return ``("exhaustive", None)`` or ``("random", N)``."""
    if strategy == "exhaustive":
        return "exhaustive", None
    if isinstance(strategy, str) and strategy.startswith("random:"):
        try:
            count = int(strategy.split(":", 1)[1])
        except ValueError:
            count = 0
        if count >= 1:
            return "random", count
    raise ValidationError(f"unknown search strategy {strategy!r}; use 'exhaustive' or 'random:N'")


def default_strategy(dims):
    return "exhaustive" if exhaustive_count(dims) <= 10**5 else "random:10000"


def selection_table(dims, strategy="exhaustive", seed=0):
    """Integer table of candidate selections, one row ``a1,b1,...,an,bn`` each."""
    kind, count = parse_strategy(strategy)
    if kind == "exhaustive":
        total = exhaustive_count(dims)
        if total > EXHAUSTIVE_CAP:
            raise ValidationError(
                f"exhaustive search over {total} selections exceeds cap {EXHAUSTIVE_CAP}; use random:N"
            )
        return _exhaustive_table(dims)
    return _random_table(dims, count, seed)


def _lambda0_pairs(w, table):
    strides = np.array([prod(w.dims[j + 1:]) for j in range(w.n)])
    i0 = table[:, 0::2] @ strides
    i1 = table[:, 1::2] @ strides
    m = w.matrix
    diag = 0.5 * (m[i0, i0].real + m[i1, i1].real)
    coh = m[i0, i1].real
    return diag + coh, diag - coh


def _row_selection(row):
    return TwoLevelSelection(tuple(zip(row[0::2].tolist(), row[1::2].tolist())))


def _best(values, table, tie_tol=1e-12):
    top = values.max()
    cand = np.flatnonzero(values >= top - tie_tol)
    if cand.size > 1:
        sub = table[cand]
        cand = cand[np.lexsort(sub.T[::-1])]
    return int(cand[0])


def search_selections(w, k, strategy="exhaustive", seed=0, tol=DECISION_TOL):
    """Maximize the witness over two-level selections (both orientations).

    Ties are broken towards the lexicographically smallest selection, and
    the unswapped orientation wins over the swapped one.
    """
    _check_k(k, w.n)
    table = selection_table(w.dims, strategy, seed)
    lp, lm = _lambda0_pairs(w, table)
    c = witness_coefficient(k)
    plain, flipped = lp - c * lm, lm - c * lp
    iu, isw = _best(plain, table), _best(flipped, table)
    swapped = flipped[isw] > plain[iu] + 1e-12
    i = isw if swapped else iu
    return _report(k, _row_selection(table[i]), lp[i], lm[i], bool(swapped), tol, searched=table.shape[0])


def ghz_fidelity(w, sel):
    """Overlap of ``w`` with the embedded ``|G0+>``, i.e. ``lambda0+``."""
    return extract_dur_coefficients(w, sel).lambda0_plus


def npt_by_fidelity(w, strategy="exhaustive", seed=0, tol=DECISION_TOL):
    """True if some searched selection gives GHZ fidelity above 1/2.

    A positive answer means no partial transpose of ``w`` is positive.
    Returns ``(flag, report)`` with the k=2 witness report of the best
    selection.
    """
    rep = search_selections(w, 2, strategy, seed, tol)
    return rep.fidelity > 0.5 + tol, rep


# -- classification --------------------------------------------------------


@dataclass
class ClassificationReport:
    n: int
    dims: tuple
    per_k: dict
    min_violated_k: Optional[int]
    strategy: str
    oracle: Optional[dict] = None
    notes: list = field(default_factory=list)

    @property
    def fidelity(self):
        return self.per_k[2].fidelity

    @property
    def conclusion(self):
        k = self.min_violated_k
        if k is None:
            return "inconclusive at all k"
        if k == 2:
            return "no PPT w.r.t. any subsystem"
        return f"not k'-PPT and not k'-separable for every k' >= {k}"

    def oracle_contradictions(self):
        """Partitions the brute-force oracle finds PPT despite a witness exclusion."""
        if self.oracle is None or self.min_violated_k is None:
            return []
        bad = []
        for k, results in self.oracle.items():
            if k >= self.min_violated_k:
                bad.extend(r.partition for r in results if r.ppt)
        return bad

    def as_dict(self):
        out = {
            "n": self.n,
            "dims": list(self.dims),
            "strategy": self.strategy,
            "min_violated_k": self.min_violated_k,
            "conclusion": self.conclusion,
            "fidelity": self.fidelity,
            "levels": [
                {
                    "k": r.k,
                    "value": r.value,
                    "bound": r.bound,
                    "violated": r.violated,
                    "selection": str(r.selection),
                    "swapped": r.swapped,
                }
                for r in self.per_k.values()
            ],
        }
        if self.oracle is not None:
            out["oracle"] = [
                {
                    "k": k,
                    "partition": str(r.partition),
                    "ppt": r.ppt,
                    "min_eigenvalues": list(r.min_eigenvalues),
                }
                for k, results in self.oracle.items()
                for r in results
            ]
            out["oracle_contradictions"] = [str(p) for p in self.oracle_contradictions()]
        return out


def classify(w, strategy=None, seed=0, oracle=False, tol=DECISION_TOL, ppt_tol=PPT_TOL):
    """Run the witness at every level ``k = 2..n``.

    The smallest violated ``k`` is reported. No violation is inconclusive:
    the criterion never certifies separability. With ``oracle=True`` every
    partition is also checked by brute force (``n <= 8``).
    """
    strategy = strategy or default_strategy(w.dims)
    per_k = {k: search_selections(w, k, strategy, seed, tol) for k in range(2, w.n + 1)}
    violated = [k for k, r in per_k.items() if r.violated]
    report = ClassificationReport(w.n, w.dims, per_k, min(violated) if violated else None, strategy)
    if oracle:
        if w.n > ORACLE_MAX_SITES:
            report.notes.append(f"oracle skipped: n={w.n} > {ORACLE_MAX_SITES}")
        else:
            report.oracle = {
                k: [is_k_ppt(w, p, ppt_tol) for p in enumerate_partitions(w.n, k)] for k in range(2, w.n + 1)
            }
    return report


def as_density(w, dims=None):
    if isinstance(w, DensityOperator):
        return w
    return DensityOperator(dims, w)
