"""Acceptance gate: one test per exit criterion.

Each test records a ``[PASS]``/``[FAIL]`` line; the lines are printed in
the terminal summary (see ``conftest.pytest_terminal_summary``).

Run just this gate with ``pytest tests/test_acceptance.py -v``.
"""

import io
import itertools
import time

import numpy as np
import pytest

from ghzsep import cli, criteria, states
from ghzsep.criteria import (
    DurCoefficients,
    dur_ppt_analytic,
    dur_state,
    is_k_ppt,
    search_selections,
    witness_value,
    witness_value_by_expectation,
)
from ghzsep.dmx import load_state, save_state
from ghzsep.ghz import g_of, ghz_basis
from ghzsep.hilbert import TwoLevelSelection, partial_transpose
from ghzsep.linalg import min_eigenvalue
from ghzsep.partitions import Partition, enumerate_partitions, tau_of

RESULTS = []


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def nonempty_proper_subsets(n):
    for r in range(1, n):
        yield from (frozenset(c) for c in itertools.combinations(range(1, n + 1), r))


def test_1_witness_bound_on_k_separable_states():
    t0 = time.perf_counter()
    configs = [((2, 2, 2), 2), ((2, 2, 2), 3), ((2, 2, 2, 2), 2), ((2, 2, 2, 2), 3), ((3, 2, 2), 2), ((3, 2, 2), 3)]
    worst_margin = -np.inf
    checked = 0
    for dims, k in configs:
        parts = enumerate_partitions(len(dims), k)
        bound = 2.0 ** (1 - k)
        for i in range(500):
            seed = 1000 * k + 100000 * len(dims) + 7 * dims[0] + i
            w = states.random_k_separable(parts[i % len(parts)], dims, terms=1 + i % 6, seed=seed)
            r = search_selections(w, k, "random:200", seed=seed)
            worst_margin = max(worst_margin, r.value - bound)
            checked += 1
    elapsed = time.perf_counter() - t0
    ok = worst_margin <= 1e-8 and elapsed <= 300
    record(
        1,
        "Tr[W Y(k)] <= 2^(1-k) on random k-separable states",
        ok,
        f"{checked} states x 200 selections, max(value - bound) = {worst_margin:.3e} (tol 1e-8), {elapsed:.1f}s",
    )


def test_2_tightness_of_boundary_states():
    worst_value = 0.0
    worst_eig = np.inf
    count = 0
    for n in range(2, 6):
        sel = TwoLevelSelection.canonical(n)
        for k in range(2, n + 1):
            for p in enumerate_partitions(n, k):
                w = states.boundary_state(p)
                worst_value = max(worst_value, abs(witness_value(w, k, sel).value - 2.0 ** (1 - k)))
                res = is_k_ppt(w, p, tol=1e-8)
                worst_eig = min(worst_eig, min(res.min_eigenvalues))
                count += 1
    ok = worst_value <= 1e-10 and worst_eig >= -1e-8
    record(
        2,
        "boundary states reach 2^(1-k) and stay k-PPT",
        ok,
        f"{count} partitions (n<=5), max |value - bound| = {worst_value:.2e}, min PT eigenvalue = {worst_eig:.2e}",
    )


def _forced_boundary(rng, n):
    """Subnormalized coefficients with |delta - 2 lambda_g| <= 1e-6 for a chosen subset."""
    while True:
        base = states.random_dur_coefficients(n, rng=rng)
        if abs(base.delta) > 1e-3:
            break
    subsets = list(nonempty_proper_subsets(n))
    beta = subsets[rng.integers(len(subsets))]
    g = g_of(beta, n)
    eps = rng.uniform(-1e-6, 1e-6)
    lam = [0.5 * x for x in base.lambdas]
    lp, lm = 0.5 * base.lambda0_plus, 0.5 * base.lambda0_minus
    lam[g - 1] = (abs(lp - lm) - eps) / 2
    return DurCoefficients(n, lp, lm, tuple(lam)), eps


def test_3_closed_form_ppt_matches_eigenvalues():
    rng = np.random.default_rng(3)
    total = agree = 0
    cases = [(n, states.random_dur_coefficients(n, rng=rng)) for n in (2, 3, 4) for _ in range(500)]
    forced = []
    for i in range(50):
        n = (2, 3, 4)[i % 3]
        c, eps = _forced_boundary(rng, n)
        forced.append(eps)
        cases.append((n, c))
    for n, c in cases:
        m = dur_state(c)
        for beta in nonempty_proper_subsets(n):
            oracle = min_eigenvalue(partial_transpose(m, beta, (2,) * n)) >= -criteria.PPT_TOL
            total += 1
            agree += dur_ppt_analytic(c, beta).ppt == oracle
    forced = np.array(forced)
    ok = agree == total and np.all(np.abs(forced) <= 1e-6)
    record(
        3,
        "closed-form PPT test agrees with eigenvalue oracle",
        ok,
        f"{agree}/{total} verdicts agree over 1500 random + 50 near-boundary states "
        f"({int(np.sum(forced < 2e-8))} forced cases on the PPT side)",
    )


def _violated_k2(p):
    return search_selections(states.ghz_noisy((2, 2), p=p), 2, "exhaustive").violated


def _bisect(pred, lo=0.0, hi=1.0, steps=60):
    # pred false at lo, true at hi
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_4_fidelity_corollary():
    p_witness = _bisect(_violated_k2)
    p_oracle = _bisect(lambda p: not is_k_ppt(states.ghz_noisy((2, 2), p=p), Partition.parse("1|2"), tol=0.0))
    ok = abs(p_witness - 1 / 3) <= 1e-6 and abs(p_oracle - 1 / 3) <= 1e-6

    implications = hits2 = hits3 = 0
    for p in np.linspace(0.0, 1.0, 50):
        flag, _ = criteria.npt_by_fidelity(states.ghz_noisy((2, 2), p=p))
        if flag:
            hits2 += 1
            ok &= not is_k_ppt(states.ghz_noisy((2, 2), p=p), Partition.parse("1|2"))
        w3 = states.ghz_noisy((2, 2, 2), p=p)
        flag3, _ = criteria.npt_by_fidelity(w3)
        if flag3:
            hits3 += 1
            for part in enumerate_partitions(3, 2) + enumerate_partitions(3, 3):
                res = is_k_ppt(w3, part)
                ok &= not any(res.verdicts)
        implications += flag + flag3
    ok &= hits2 > 0 and hits3 > 0
    record(
        4,
        "GHZ fidelity > 1/2 implies NPT for every split",
        ok,
        f"witness threshold p = {p_witness:.9f}, oracle threshold p = {p_oracle:.9f} (target 1/3 +- 1e-6); "
        f"{hits2} n=2 and {hits3} n=3 grid points with fidelity > 1/2, all NPT",
    )


def _stirling(n, k, memo={}):
    if (n, k) not in memo:
        if n == k:
            memo[(n, k)] = 1
        elif k == 0 or k > n:
            memo[(n, k)] = 0
        else:
            memo[(n, k)] = k * _stirling(n - 1, k) + _stirling(n - 1, k - 1)
    return memo[(n, k)]


def test_5_combinatorics():
    t0 = time.perf_counter()
    ok = True
    for n in range(2, 11):
        full = frozenset(range(1, n + 1))
        hits = {}
        for r in range(n + 1):
            for c in itertools.combinations(range(1, n + 1), r):
                beta = frozenset(c)
                g = g_of(beta, n)
                ok &= g == g_of(full - beta, n)
                hits[g] = hits.get(g, 0) + 1
        ok &= sorted(hits) == list(range(2 ** (n - 1))) and set(hits.values()) == {2}
    tau_checked = 0
    for n in range(2, 9):
        for k in range(2, n + 1):
            for p in enumerate_partitions(n, k):
                ok &= len(tau_of(p)) == 2 ** (k - 1) - 1
                tau_checked += 1
    for n in range(2, 11):
        for k in range(2, n + 1):
            ok &= len(enumerate_partitions(n, k)) == _stirling(n, k)
    elapsed = time.perf_counter() - t0
    ok &= elapsed <= 30
    record(
        5,
        "g two-to-one and complement-invariant, |tau|, Stirling counts",
        ok,
        f"g exhaustive n<=10, |tau| on {tau_checked} partitions (n<=8), S(n,k) n<=10, {elapsed:.1f}s",
    )


def test_6_ghz_basis_orthonormal():
    worst = 0.0
    for n in range(1, 9):
        b = ghz_basis(n)
        worst = max(worst, np.max(np.abs(b.conj().T @ b - np.eye(2**n))))
    record(6, "GHZ basis Gram matrix is the identity", worst <= 1e-12, f"max deviation {worst:.2e} for n<=8")


def test_7_cross_path_consistency():
    rng = np.random.default_rng(7)
    worst = 0.0
    for i in range(1000):
        n = int(rng.integers(2, 5))
        dims = tuple(int(d) for d in rng.integers(2, 4, size=n))
        w = states.random_density(dims, seed=i)
        pairs = [tuple(int(x) for x in rng.choice(d, size=2, replace=False)) for d in dims]
        sel = TwoLevelSelection(tuple(pairs))
        k = int(rng.integers(2, n + 1))
        swapped = bool(i % 2)
        a = witness_value(w, k, sel, swapped=swapped).value
        b = witness_value_by_expectation(w, k, sel, swapped=swapped)
        worst = max(worst, abs(a - b))
    record(7, "coefficient and expectation witness paths agree", worst <= 1e-10, f"max |diff| {worst:.2e} over 1000 triples")


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return cli.main(list(argv), out=out, err=err), out.getvalue()


def test_8_cli_roundtrip_and_classify(tmp_path):
    worst = 0.0
    for seed, dims in [(7, (2, 2)), (11, (3, 2, 2)), (13, (2, 3))]:
        w = states.random_density(dims, seed=seed)
        path = tmp_path / f"r{seed}.dmx"
        save_state(w, path)
        worst = max(worst, np.max(np.abs(load_state(path).matrix - w.matrix)))
    ok = worst <= 1e-15

    ghz = tmp_path / "ghz.dmx"
    save_state(states.ghz_noisy((2, 2, 2), p=1.0), ghz)
    mixed = tmp_path / "mixed.dmx"
    save_state(states.maximally_mixed((2, 2, 2)), mixed)
    noisy = tmp_path / "noisy.dmx"
    assert _cli("gen", "ghz-noisy", "--dims", "2,2", "--p", "0.4", "--out", str(noisy))[0] == 0

    code1, out1 = _cli("classify", str(ghz))
    code2, out2 = _cli("classify", str(mixed))
    code3, out3 = _cli("classify", str(noisy))
    ok &= code1 == code2 == code3 == 0
    ok &= "min_violated_k: 2" in out1 and "conclusion: no PPT w.r.t. any subsystem" in out1
    ok &= "min_violated_k: none" in out2 and "conclusion: inconclusive at all k" in out2
    ok &= "witness[k=2]: value=0.55 bound=0.5 violated=yes" in out3 and "fidelity: 0.55" in out3
    ok &= "min_violated_k: 2" in out3
    record(8, "DMX round-trip and classify verdicts", ok, f"round-trip max |diff| {worst:.1e}; 3/3 classify examples")
