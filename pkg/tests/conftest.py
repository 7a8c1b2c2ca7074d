import numpy as np
import pytest


def power_sums_match(m, eigenvalues, tol=1e-10):
    """Independent spectrum oracle: Tr(M^p) == sum(lambda^p) for p = 1..dim.

    Newton's identities make these power sums determine the eigenvalue
    multiset, so no eigensolver is involved.
    """
    m = np.asarray(m, dtype=complex)
    ev = np.asarray(eigenvalues, dtype=float)
    mp = np.eye(m.shape[0], dtype=complex)
    for p in range(1, m.shape[0] + 1):
        mp = mp @ m
        if abs(np.trace(mp).real - np.sum(ev**p)) > tol:
            return False
    return True


def random_unitary(rng, d):
    """Gram-Schmidt on a complex Gaussian matrix."""
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q = np.zeros_like(a)
    for i in range(d):
        v = a[:, i].copy()
        for j in range(i):
            v -= np.vdot(q[:, j], v) * q[:, j]
        q[:, i] = v / np.linalg.norm(v)
    return q


def random_hermitian(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (a + a.conj().T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


GHZ2 = np.array([[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]], dtype=complex)
# partial transpose of GHZ2 on site 2, written out by hand: the coherence
# between |00> and |11> moves to |01>,|10>
GHZ2_T2 = np.array([[0.5, 0, 0, 0], [0, 0, 0.5, 0], [0, 0.5, 0, 0], [0, 0, 0, 0.5]], dtype=complex)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
