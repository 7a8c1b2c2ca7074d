"""Generators for test states.

Randomized generators draw from ``numpy.random.default_rng(seed)`` (PCG64),
so every output is a deterministic function of its arguments.
"""

from dataclasses import dataclass
from math import prod

import numpy as np

from . import ghz
from .criteria import DurCoefficients, dur_state
from .hilbert import DensityOperator, TwoLevelSelection, ValidationError, check_dims, embed_operator
from .partitions import Partition, tau_of


def _canonical(sel, dims):
    return TwoLevelSelection.canonical(len(dims)) if sel is None else sel


def ghz_noisy(dims, sel=None, p=1.0):
    """``p |G0+><G0+| (+) 0  +  (1 - p) I/d``."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}")
    dims = check_dims(dims)
    sel = _canonical(sel, dims)
    d = prod(dims)
    m = p * embed_operator(ghz.ghz_projector(len(dims), 0, +1), sel, dims) + (1.0 - p) * np.eye(d) / d
    return DensityOperator(dims, m)


def werner(p):
    """Two-qubit Werner state, the ``n = 2`` case of :func:`ghz_noisy`."""
    return ghz_noisy((2, 2), None, p)


def maximally_mixed(dims):
    dims = check_dims(dims)
    d = prod(dims)
    return DensityOperator(dims, np.eye(d, dtype=complex) / d)


def embedded_dur(c, dims=None, sel=None):
    """GHZ-diagonal operator ``dur_state(c)`` placed on the selected subspace."""
    dims = check_dims(dims or (2,) * c.n)
    sel = _canonical(sel, dims)
    return DensityOperator(dims, embed_operator(dur_state(c), sel, dims))


def boundary_coefficients(partition):
    """Coefficients that reach the witness bound with equality for ``partition``."""
    k, n = partition.k, partition.n
    if k < 2:
        raise ValidationError("boundary state needs k >= 2")
    lambdas = np.zeros((1 << (n - 1)) - 1)
    for i in tau_of(partition):
        lambdas[i - 1] = 2.0 ** (-k)
    return DurCoefficients(n, 2.0 ** (1 - k), 0.0, tuple(lambdas))


def boundary_state(partition, dims=None, sel=None):
    """Unit-trace state with witness value exactly ``2^(1-k)`` that is
    still k-PPT with respect to ``partition``.

    Weight ``2^(1-k)`` sits on ``|G0+>`` and ``2^(-k)`` on each GHZ pair
    indexed by the nonzero ``g`` images of the block unions.
    """
    return embedded_dur(boundary_coefficients(partition), dims, sel)


def _random_unit(rng, dim):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _reorder_sites(vec, dims, order):
    # vec is laid out with sites in `order`; return it in natural site order
    t = vec.reshape([dims[s - 1] for s in order])
    perm = np.argsort([s - 1 for s in order])
    return t.transpose(perm).reshape(-1)


def random_k_separable(partition, dims, terms=4, seed=0):
    """Convex mixture of ``terms`` products of random pure block states."""
    dims = check_dims(dims)
    if partition.n != len(dims):
        raise ValidationError(f"partition over {partition.n} sites, dims have {len(dims)}")
    if terms < 1:
        raise ValidationError("terms must be >= 1")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    order = [s for b in partition.blocks for s in b]
    d = prod(dims)
    m = np.zeros((d, d), dtype=complex)
    for pl in weights:
        vec = np.ones(1, dtype=complex)
        for block in partition.blocks:
            vec = np.kron(vec, _random_unit(rng, prod(dims[s - 1] for s in block)))
        vec = _reorder_sites(vec, dims, order)
        m += pl * np.outer(vec, vec.conj())
    return DensityOperator(dims, m)


def random_density(dims, seed=0):
    """``G G^dagger / Tr(G G^dagger)`` with complex Gaussian ``G``."""
    dims = check_dims(dims)
    d = prod(dims)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityOperator(dims, m / np.trace(m).real)


def random_dur_coefficients(n, seed=0, rng=None):
    """Random unit-trace GHZ-diagonal coefficients (flat Dirichlet weights)."""
    rng = np.random.default_rng(seed) if rng is None else rng
    m = (1 << (n - 1)) - 1
    # weights over lambda0+, lambda0- and the m pairs (each pair counts twice)
    w = rng.dirichlet(np.ones(m + 2))
    return DurCoefficients(n, w[0], w[1], tuple(w[2:] / 2.0))


GENERATOR_KINDS = ("ghz-noisy", "boundary", "k-separable", "random", "dur")


@dataclass
class GeneratorSpec:
    """Parameters for one of the generator kinds, as exposed by the CLI."""

    kind: str
    dims: tuple
    p: float = None
    partition: Partition = None
    terms: int = 4
    seed: int = None
    coefficients: DurCoefficients = None
    selection: TwoLevelSelection = None

    def validate(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValidationError(f"unknown generator kind {self.kind!r}; choose from {', '.join(GENERATOR_KINDS)}")
        self.dims = check_dims(self.dims)
        if self.kind == "ghz-noisy" and (self.p is None or not 0.0 <= self.p <= 1.0):
            raise ValidationError("ghz-noisy needs p in [0, 1]")
        if self.kind in ("boundary", "k-separable") and self.partition is None:
            raise ValidationError(f"{self.kind} needs a partition")
        if self.kind in ("k-separable", "random") and self.seed is None:
            raise ValidationError(f"{self.kind} needs a seed")
        if self.kind == "dur" and self.coefficients is None:
            raise ValidationError("dur needs coefficients")
        if self.partition is not None and self.partition.n != len(self.dims):
            raise ValidationError("partition and dims disagree on the number of sites")
        return self

    def build(self):
        self.validate()
        if self.kind == "ghz-noisy":
            return ghz_noisy(self.dims, self.selection, self.p)
        if self.kind == "boundary":
            return boundary_state(self.partition, self.dims, self.selection)
        if self.kind == "k-separable":
            return random_k_separable(self.partition, self.dims, self.terms, self.seed)
        if self.kind == "random":
            return random_density(self.dims, self.seed)
        c = self.coefficients
        if abs(c.trace - 1.0) > 1e-9:
            raise ValidationError(f"dur coefficients have trace {c.trace:.12g}; a state file needs trace 1")
        return embedded_dur(c, self.dims, self.selection)
