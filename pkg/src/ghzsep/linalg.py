"""Dense complex-matrix kernel.

Matrices are plain ``numpy.ndarray`` objects. Hermitian eigenvalues are
obtained through the real-symmetric embedding

    [[Re H, -Im H],
     [Im H,  Re H]]

whose spectrum is that of ``H`` with every eigenvalue doubled. The
symmetric problem is handed to LAPACK by default; a cyclic Jacobi solver
is kept for dependency-free use and for cross-checking.
"""

import numpy as np

HERMITICITY_TOL = 1e-9
PSD_TOL = 1e-9
IMAG_TRACE_TOL = 1e-10


class EigenSolverError(ArithmeticError):
    """Raised when an eigensolver fails to converge."""


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-d complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def check_hermitian(h, tol=HERMITICITY_TOL):
    """Validate ``h`` as a square Hermitian matrix and return it as an array.

    The max-norm of ``h - h^dagger`` must not exceed ``tol``.
    """
    m = as_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"Hermitian matrix must be square, got shape {m.shape}")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3g} > {tol:g})")
    return m


def kron(a, b):
    """Kronecker product; the first factor carries the most significant index."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def real_symmetric_embedding(h):
    """Real symmetric ``2d x 2d`` matrix with the doubled spectrum of ``h``."""
    re, im = h.real, h.imag
    return np.block([[re, -im], [im, re]])


def jacobi_eigenvalues(s, tol=1e-14, max_sweeps=100):
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    s : ndarray
        Real symmetric matrix. It is copied, not modified.
    tol : float
        Convergence threshold on the off-diagonal Frobenius norm relative
        to the full Frobenius norm.
    max_sweeps : int
        Iteration cap; exceeding it raises :class:`EigenSolverError`.

    Returns
    -------
    ndarray
        Eigenvalues in ascending order.
    """
    a = np.array(s, dtype=float)
    n = a.shape[0]
    if n <= 1:
        return np.sort(np.diag(a))
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(a**2) - np.sum(np.diag(a) ** 2))
        if off <= tol * scale:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - sn * aq
                a[:, q] = sn * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - sn * rq
                a[q, :] = sn * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    raise EigenSolverError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def hermitian_eigenvalues(h, method="lapack"):
    """Ascending eigenvalues of a Hermitian matrix.

    Solves the real symmetric embedding of ``h`` and folds the doubled
    spectrum back by averaging consecutive pairs.

    Parameters
    ----------
    h : array_like
        Hermitian matrix (checked to ``HERMITICITY_TOL``).
    method : {"lapack", "jacobi"}
        Symmetric solver applied to the embedding.
    """
    m = check_hermitian(h)
    if m.shape[0] == 0:
        return np.zeros(0)
    s = real_symmetric_embedding(m)
    s = 0.5 * (s + s.T)
    if method == "lapack":
        try:
            ev = np.linalg.eigvalsh(s)
        except np.linalg.LinAlgError as exc:
            raise EigenSolverError(str(exc)) from exc
    elif method == "jacobi":
        ev = jacobi_eigenvalues(s)
    else:
        raise ValueError(f"unknown eigensolver method {method!r}")
    return 0.5 * (ev[0::2] + ev[1::2])


def min_eigenvalue(h, method="lapack"):
    return float(hermitian_eigenvalues(h, method=method)[0])


def is_psd(h, tol=PSD_TOL, method="lapack"):
    """True iff the smallest eigenvalue of ``h`` is at least ``-tol``."""
    return min_eigenvalue(h, method=method) >= -tol


def expectation(w, o):
    """Real part of ``Tr[w o]`` for Hermitian ``w`` and ``o``.

    Raises ``ValueError`` on a dimension mismatch or if the imaginary part
    of the trace exceeds ``IMAG_TRACE_TOL``.
    """
    w = as_matrix(w, "w")
    o = as_matrix(o, "o")
    if w.shape != o.shape or w.shape[0] != w.shape[1]:
        raise ValueError(f"dimension mismatch: {w.shape} vs {o.shape}")
    # Tr[w o] = sum_ij w_ij o_ji
    tr = np.sum(w * o.T)
    if abs(tr.imag) > IMAG_TRACE_TOL:
        raise ValueError(f"trace has imaginary part {tr.imag:.3g}; operators not Hermitian?")
    return float(tr.real)
