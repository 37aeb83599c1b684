"""Labelled multi-subsystem states, partial trace and partial transpose."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import tensor
from .errors import InputError
from .tensor import TOL_HERM, TOL_PSD, TOL_TRACE


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered labelled subsystems, e.g. ``(("a", 2), ("t", 2), ("A", 4))``."""

    subsystems: tuple[tuple[str, int], ...]

    def __post_init__(self):
        subs = tuple((str(label), int(dim)) for label, dim in self.subsystems)
        if not subs:
            raise InputError("layout needs at least one subsystem")
        labels = [label for label, _ in subs]
        if any(not label for label in labels):
            raise InputError("subsystem labels must be non-empty")
        if len(set(labels)) != len(labels):
            raise InputError(f"duplicate subsystem labels in {labels}")
        for label, dim in subs:
            if dim < 2:
                raise InputError(f"subsystem {label!r} has dimension {dim}; need >= 2")
        object.__setattr__(self, "subsystems", subs)

    @classmethod
    def of(cls, spec) -> "SubsystemLayout":
        if isinstance(spec, SubsystemLayout):
            return spec
        return cls(tuple((label, dim) for label, dim in spec))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.subsystems)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown subsystem label {label!r}; layout has {list(self.labels)}") from None

    def dim(self, label: str) -> int:
        return self.dims[self.index(label)]

    def select(self, labels: Iterable[str]) -> "SubsystemLayout":
        """Sub-layout with ``labels`` in original layout order."""
        wanted = set(labels)
        for label in wanted:
            self.index(label)
        return SubsystemLayout(tuple(s for s in self.subsystems if s[0] in wanted))

    def to_json(self) -> list:
        return [[label, dim] for label, dim in self.subsystems]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    layout: SubsystemLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        layout = SubsystemLayout.of(self.layout)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != layout.total_dim:
            raise InputError(f"{amps.size} amplitudes for layout of dimension {layout.total_dim}")
        if not np.all(np.isfinite(amps)):
            raise InputError("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-10:
            raise InputError(f"state vector norm is {norm!r}, expected 1")
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "amplitudes", _frozen(amps))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density matrix: Hermitian, unit trace, positive semidefinite."""

    layout: SubsystemLayout
    mat: np.ndarray

    def __post_init__(self):
        layout = SubsystemLayout.of(self.layout)
        mat = tensor.as_matrix(self.mat, square=True)
        n = layout.total_dim
        if mat.shape != (n, n):
            raise InputError(f"matrix shape {mat.shape} does not match layout dimension {n}")
        dev = float(np.max(np.abs(mat - mat.conj().T)))
        if dev > TOL_HERM:
            raise InputError(f"density matrix is not Hermitian (deviation {dev:.3e})")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TOL_TRACE:
            raise InputError(f"density matrix trace is {tr.real:.12g}, expected 1")
        lam_min = float(tensor.eigvalsh(mat)[-1])
        if lam_min < TOL_PSD:
            raise InputError(f"density matrix has negative eigenvalue {lam_min:.3e}")
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "mat", _frozen(mat))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def to_json(self) -> dict:
        return {"layout": self.layout.to_json(), "mat": tensor.to_json(self.mat)}

    @classmethod
    def from_json(cls, obj) -> "DensityMatrix":
        try:
            layout = SubsystemLayout.of(obj["layout"])
            mat = tensor.from_json(obj["mat"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed density matrix JSON: {exc}") from exc
        return cls(layout, mat)


def sanitize(layout, mat) -> DensityMatrix:
    """Project a nearly-valid matrix onto the state space.

    Hermitizes, clips eigenvalues above ``TOL_PSD`` but below zero to zero and
    renormalises the trace. Eigenvalues below ``TOL_PSD`` are still rejected.
    This is the only place where a state is modified to pass validation.
    """
    mat = tensor.as_matrix(mat, square=True)
    mat = (mat + mat.conj().T) / 2
    vals, vecs = tensor.hermitian_eigen(mat)
    if vals[-1] < TOL_PSD:
        raise InputError(f"eigenvalue {vals[-1]:.3e} too negative to sanitize")
    vals = np.clip(vals, 0.0, None)
    mat = (vecs * vals) @ vecs.conj().T
    return DensityMatrix(layout, mat / np.trace(mat).real)


class Bipartition:
    """Two disjoint non-empty groups of subsystem labels.

    Parsed from strings such as ``"aA|t"``: every character on a side is one
    label, so the string grammar only addresses single-character labels.
    """

    def __init__(self, left: Iterable[str], right: Iterable[str]):
        self.left = frozenset(left)
        self.right = frozenset(right)
        if not self.left or not self.right:
            raise InputError("both sides of a bipartition must be non-empty")
        if self.left & self.right:
            raise InputError(f"bipartition sides overlap on {sorted(self.left & self.right)}")

    @classmethod
    def parse(cls, text: str) -> "Bipartition":
        if isinstance(text, Bipartition):
            return text
        parts = str(text).split("|")
        if len(parts) != 2:
            raise InputError(f"bipartition {text!r} must have exactly one '|'")
        left, right = (list(p.strip()) for p in parts)
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise InputError(f"repeated label in bipartition {text!r}")
        return cls(left, right)

    @property
    def labels(self) -> frozenset[str]:
        return self.left | self.right

    def swapped(self) -> "Bipartition":
        return Bipartition(self.right, self.left)

    def check(self, layout: SubsystemLayout) -> None:
        for label in sorted(self.labels):
            if label not in layout.labels:
                raise InputError(f"unknown subsystem label {label!r} in bipartition {self}; "
                                 f"layout has {list(layout.labels)}")

    def format(self, layout: SubsystemLayout | None = None) -> str:
        order = layout.labels if layout is not None else None

        def side(s):
            return "".join(sorted(s, key=order.index) if order else sorted(s))

        return f"{side(self.left)}|{side(self.right)}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Bipartition({self.format()!r})"

    def __eq__(self, other):
        return isinstance(other, Bipartition) and (self.left, self.right) == (other.left, other.right)

    def __hash__(self):
        return hash((self.left, self.right))


def product_state(*states: DensityMatrix) -> DensityMatrix:
    """Tensor product of states with disjoint labels, in argument order."""
    mat = np.ones((1, 1), dtype=complex)
    subs: list = []
    for st in states:
        mat = np.kron(mat, st.mat)
        subs.extend(st.layout.subsystems)
    return DensityMatrix(SubsystemLayout(tuple(subs)), mat)


def to_density(psi: PureState) -> DensityMatrix:
    v = psi.amplitudes
    return DensityMatrix(psi.layout, np.outer(v, v.conj()))


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Reduced state on ``keep``; subsystem order follows the original layout."""
    keep = set(keep)
    if not keep:
        raise InputError("partial_trace needs at least one label to keep")
    layout = rho.layout
    kept = layout.select(keep)
    dims = layout.dims
    n = len(dims)
    keep_idx = [i for i, label in enumerate(layout.labels) if label in keep]
    drop_idx = [i for i in range(n) if i not in keep_idx]
    dk = int(np.prod([dims[i] for i in keep_idx]))
    dd = int(np.prod([dims[i] for i in drop_idx])) if drop_idx else 1
    t = rho.mat.reshape(dims + dims)
    perm = keep_idx + drop_idx
    t = t.transpose(perm + [n + i for i in perm]).reshape(dk, dd, dk, dd)
    return DensityMatrix(kept, np.einsum("ajbj->ab", t))


def partial_transpose_matrix(mat: np.ndarray, dims: Sequence[int], systems: Iterable[int]) -> np.ndarray:
    """Partial transpose of a raw matrix over subsystem indices ``systems``."""
    dims = list(dims)
    n = len(dims)
    axes = list(range(2 * n))
    for i in set(systems):
        axes[i], axes[n + i] = axes[n + i], axes[i]
    d = int(np.prod(dims))
    return np.asarray(mat).reshape(dims + dims).transpose(axes).reshape(d, d)


def partial_transpose(rho: DensityMatrix, part: Iterable[str]) -> np.ndarray:
    """Transpose the indices of the subsystems in ``part`` only.

    The result is Hermitian with unit trace but generally not positive, so it
    is returned as a plain matrix rather than a ``DensityMatrix``.
    """
    idx = [rho.layout.index(label) for label in set(part)]
    return partial_transpose_matrix(rho.mat, rho.layout.dims, idx)


def permute_subsystems(rho: DensityMatrix, new_order: Sequence[str]) -> DensityMatrix:
    layout = rho.layout
    new_order = list(new_order)
    if sorted(new_order) != sorted(layout.labels) or len(new_order) != len(layout.labels):
        raise InputError(f"{new_order} is not a permutation of {list(layout.labels)}")
    perm = [layout.index(label) for label in new_order]
    n = len(perm)
    dims = layout.dims
    t = rho.mat.reshape(dims + dims).transpose(perm + [n + i for i in perm])
    new_layout = SubsystemLayout(tuple(layout.subsystems[i] for i in perm))
    return DensityMatrix(new_layout, t.reshape(rho.mat.shape))
