"""Reader and writer for the DMX text format.

::

    DMX 1
    dims: 2 2
    # r c re im   (0-based; '#' starts a comment)
    0 0 0.5 0
    0 3 0.5 0
    3 3 0.5 0

Only one triangle needs to be listed: a missing ``(c, r)`` entry is filled
with the conjugate of ``(r, c)``. Listing the same ``(r, c)`` twice is an
error.
"""

from math import prod

import numpy as np

from .hilbert import DensityOperator, ValidationError, check_dims

FORMAT_VERSION = "1"
HERMITIAN_TOL = 1e-9


class DmxFormatError(ValidationError):
    pass


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_state(text, validate=True, renormalize=False):
    """Parse DMX text into a :class:`DensityOperator`.

    Parameters
    ----------
    validate : bool
        Enforce unit trace (to 1e-9) and positivity.
    renormalize : bool
        Divide by the trace before validating.
    """
    lines = _content_lines(text)
    try:
        _, magic = next(lines)
        _, dims_line = next(lines)
    except StopIteration:
        raise DmxFormatError("truncated header") from None
    if magic.split() != ["DMX", FORMAT_VERSION]:
        raise DmxFormatError(f"bad magic line {magic!r}; expected 'DMX {FORMAT_VERSION}'")
    key, _, rest = dims_line.partition(":")
    if key.strip() != "dims" or not rest.strip():
        raise DmxFormatError(f"bad dims line {dims_line!r}")
    try:
        dims = check_dims(int(x) for x in rest.split())
    except ValueError as exc:
        raise DmxFormatError(f"bad dims line {dims_line!r}: {exc}") from exc
    d = prod(dims)

    entries = {}
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 4:
            raise DmxFormatError(f"line {lineno}: expected 'r c re im', got {line!r}")
        try:
            r, c = int(parts[0]), int(parts[1])
            val = complex(float(parts[2]), float(parts[3]))
        except ValueError as exc:
            raise DmxFormatError(f"line {lineno}: {exc}") from exc
        if not (0 <= r < d and 0 <= c < d):
            raise DmxFormatError(f"line {lineno}: index ({r},{c}) outside 0..{d - 1}")
        if not np.isfinite(val):
            raise DmxFormatError(f"line {lineno}: non-finite value")
        if (r, c) in entries:
            raise DmxFormatError(f"line {lineno}: duplicate entry ({r},{c})")
        entries[(r, c)] = val

    m = np.zeros((d, d), dtype=complex)
    for (r, c), val in entries.items():
        if r == c:
            if abs(val.imag) > HERMITIAN_TOL:
                raise ValidationError(f"diagonal entry ({r},{r}) has imaginary part {val.imag:.3g}")
            m[r, r] = val.real
            continue
        m[r, c] = val
        mirror = entries.get((c, r))
        if mirror is None:
            m[c, r] = val.conjugate()
        elif abs(mirror - val.conjugate()) > HERMITIAN_TOL:
            raise ValidationError(f"entries ({r},{c}) and ({c},{r}) are not conjugate")

    if renormalize:
        tr = np.trace(m).real
        if tr <= 0:
            raise ValidationError(f"cannot renormalize: trace {tr:.3g}")
        m = m / tr
    if validate:
        return DensityOperator.validated(dims, m)
    return DensityOperator(dims, m)


def format_state(w, comment=None):
    """DMX text for ``w``; the upper triangle with nonzero entries only."""
    out = [f"DMX {FORMAT_VERSION}", "dims: " + " ".join(str(x) for x in w.dims)]
    if comment:
        out.extend("# " + line for line in comment.splitlines())
    m = w.matrix
    rows, cols = np.nonzero(np.triu(m))
    for r, c in zip(rows.tolist(), cols.tolist()):
        v = m[r, c]
        im = 0.0 if r == c else v.imag
        out.append(f"{r} {c} {float(v.real)!r} {float(im)!r}")
    return "\n".join(out) + "\n"


def load_state(path, validate=True, renormalize=False):
    with open(path, encoding="utf-8") as fh:
        return parse_state(fh.read(), validate=validate, renormalize=renormalize)


def save_state(w, path, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_state(w, comment))
