"""Dense complex matrix algebra.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
helpers here add validation, a deterministic Hermitian eigensolver and the
Schatten-1 (trace) norm used throughout the package.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError, NumericalError

TOL_HERM = 1e-10
TOL_PSD = -1e-9
TOL_TRACE = 1e-10
TOL_EQ = 1e-9


def as_matrix(m, *, square: bool = False) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix has non-finite entries")
    if square and arr.shape[0] != arr.shape[1]:
        raise InputError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def matrix_algebra(a, b=None, op: str = "mul"):
    """Apply a basic linear-algebra operation.

    Args:
        a: Left operand.
        b: Right operand for ``add``, ``sub`` and ``mul``; the scalar factor for
            ``scale``; ignored for ``adjoint`` and ``trace``.
        op: One of ``add``, ``sub``, ``mul``, ``scale``, ``adjoint``, ``trace``.

    Returns:
        A matrix, or a complex number for ``trace``.
    """
    a = as_matrix(a)
    if op == "adjoint":
        return a.conj().T
    if op == "trace":
        if a.shape[0] != a.shape[1]:
            raise InputError(f"trace of non-square matrix {a.shape}")
        return complex(np.trace(a))
    if op == "scale":
        return complex(b) * a
    if op not in ("add", "sub", "mul"):
        raise InputError(f"unknown op {op!r}")
    b = as_matrix(b)
    if op == "mul":
        if a.shape[1] != b.shape[0]:
            raise InputError(f"cannot multiply {a.shape} by {b.shape}")
        return a @ b
    if a.shape != b.shape:
        raise InputError(f"shape mismatch {a.shape} vs {b.shape}")
    return a + b if op == "add" else a - b


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def is_hermitian(m, tol: float = TOL_HERM) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and float(np.max(np.abs(m - m.conj().T))) <= tol


def _check_hermitian(m) -> np.ndarray:
    m = as_matrix(m, square=True)
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > TOL_HERM:
        raise InputError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return m


def hermitian_eigen(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are returned in descending order. Each eigenvector column is
    phase-fixed so that its largest-modulus entry is real and positive, which
    makes the output deterministic for non-degenerate spectra.

    Raises:
        InputError: ``m`` is not square and Hermitian within ``TOL_HERM``.
        NumericalError: LAPACK failed to converge.
    """
    m = _check_hermitian(m)
    try:
        vals, vecs = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    pivots = np.argmax(np.abs(vecs), axis=0)
    phases = vecs[pivots, np.arange(vecs.shape[1])]
    vecs = vecs * (np.abs(phases) / phases)
    return vals, vecs


def eigvalsh(m) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in descending order."""
    m = _check_hermitian(m)
    try:
        vals = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    return vals[::-1]


def schatten1(m) -> float:
    """Trace norm of a Hermitian matrix, the sum of absolute eigenvalues."""
    return float(np.sum(np.abs(eigvalsh(m))))


def to_json(m) -> dict:
    m = as_matrix(m)
    flat = m.reshape(-1)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def from_json(obj) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", [0.0] * len(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from exc
    if rows < 1 or cols < 1 or re.size != rows * cols or im.size != rows * cols:
        raise InputError(f"matrix JSON entry count does not match {rows}x{cols}")
    return as_matrix((re + 1j * im).reshape(rows, cols))
