"""State preparation, gates, destructive measurement and Kraus channels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tensor
from .errors import InputError
from .states import DensityMatrix, PureState, SubsystemLayout, partial_trace

QUBIT_LAYOUT = SubsystemLayout((("a", 2), ("t", 2), ("m", 2), ("e", 2)))


@dataclass(frozen=True, eq=False)
class Gate:
    name: str
    mat: np.ndarray
    arity: int

    def __post_init__(self):
        mat = tensor.as_matrix(self.mat, square=True)
        if self.arity not in (1, 2):
            raise InputError(f"gate arity must be 1 or 2, got {self.arity}")
        if np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0]))) > 1e-10:
            raise InputError(f"gate {self.name!r} is not unitary")
        object.__setattr__(self, "mat", mat)


H = Gate("H", np.array([[1, 1], [1, -1]]) / np.sqrt(2), 1)
X = Gate("X", np.array([[0, 1], [1, 0]]), 1)
# control is the first wire
CNOT = Gate("CNOT", np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), 2)


def ud_projectors(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto Alice's "up" (first ``d // 2`` levels) and "down" subspaces."""
    if d < 2:
        raise InputError(f"Alice dimension must be >= 2, got {d}")
    up = np.zeros((d, d), dtype=complex)
    up[: d // 2, : d // 2] = np.eye(d // 2)
    return up, np.eye(d) - up


def embed_operator(op: np.ndarray, layout: SubsystemLayout, wires: Sequence[str]) -> np.ndarray:
    """Full-space matrix acting as ``op`` on ``wires`` (in that order) and identity elsewhere.

    ``op`` may map the wires to a different total dimension; the output
    subsystem dimensions are then inferred only when a single wire is given.
    """
    wires = list(wires)
    if len(set(wires)) != len(wires):
        raise InputError(f"repeated wire in {wires}")
    idx = [layout.index(w) for w in wires]
    rest = [i for i in range(len(layout.dims)) if i not in idx]
    in_dims = list(layout.dims)
    d_in = int(np.prod([in_dims[i] for i in idx]))
    op = np.asarray(op, dtype=complex)
    if op.shape[1] != d_in:
        raise InputError(f"operator with {op.shape[1]} columns cannot act on wires {wires} of dimension {d_in}")
    out_dims = list(in_dims)
    if op.shape[0] != d_in:
        if len(idx) != 1:
            raise InputError("dimension-changing operators must act on a single wire")
        out_dims[idx[0]] = op.shape[0]
    d_rest = int(np.prod([in_dims[i] for i in rest])) if rest else 1
    full = np.kron(op, np.eye(d_rest))
    order = idx + rest
    n = len(order)
    t = full.reshape([out_dims[i] for i in order] + [in_dims[i] for i in order])
    inv = [order.index(i) for i in range(n)]
    t = t.transpose(inv + [n + i for i in inv])
    return t.reshape(int(np.prod(out_dims)), int(np.prod(in_dims)))


def ghz_state(p: float) -> PureState:
    """Four-qubit GHZ state sqrt(p)|0000> + sqrt(1-p)|1111> on wires a, t, m, e."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"p must lie in [0, 1], got {p}")
    amps = np.zeros(16, dtype=complex)
    amps[0] = np.sqrt(p)
    amps[-1] = np.sqrt(1.0 - p)
    return PureState(QUBIT_LAYOUT, amps)


def apply_unitary(state, gate: Gate, wires: Sequence[str]):
    """Apply ``gate`` on ``wires``; works on pure states and density matrices."""
    wires = list(wires)
    if len(wires) != gate.arity:
        raise InputError(f"gate {gate.name} takes {gate.arity} wire(s), got {wires}")
    layout = state.layout
    d = int(np.prod([layout.dim(w) for w in wires]))
    if gate.mat.shape[0] != d:
        raise InputError(f"gate {gate.name} of size {gate.mat.shape[0]} does not fit wires {wires}")
    u = embed_operator(gate.mat, layout, wires)
    if isinstance(state, PureState):
        return PureState(layout, u @ state.amplitudes)
    if isinstance(state, DensityMatrix):
        return DensityMatrix(layout, u @ state.mat @ u.conj().T)
    raise InputError(f"cannot apply a gate to {type(state).__name__}")


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    outcome_index: int
    probability: float
    post_state: DensityMatrix | None
    flagged: bool = False  # zero-probability outcome, no post state


def _basis_matrix(basis, d: int) -> np.ndarray:
    if basis is None or (isinstance(basis, str) and basis == "computational"):
        return np.eye(d, dtype=complex)
    b = tensor.as_matrix(basis, square=True)
    if b.shape[0] != d:
        raise InputError(f"basis of size {b.shape[0]} does not span dimension {d}")
    if np.max(np.abs(b.conj().T @ b - np.eye(d))) > 1e-10:
        raise InputError("basis vectors (columns) are not orthonormal")
    return b


def measure_projective(rho: DensityMatrix, wire: str, basis=None) -> list[MeasurementOutcome]:
    """Destructive projective measurement of ``wire``.

    Returns every outcome with its probability. The post-measurement state has
    ``wire`` removed from the layout; it is ``None`` when the outcome has zero
    probability (``flagged``) or when no other subsystem remains.
    """
    layout = rho.layout
    d = layout.dim(wire)
    b = _basis_matrix(basis, d)
    rest = [label for label in layout.labels if label != wire]
    outcomes = []
    for k in range(d):
        proj = embed_operator(np.outer(b[:, k], b[:, k].conj()), layout, [wire])
        projected = proj @ rho.mat @ proj
        prob = float(np.trace(projected).real)
        if prob <= 1e-12:
            outcomes.append(MeasurementOutcome(k, max(prob, 0.0), None, flagged=True))
            continue
        post = None
        if rest:
            post = partial_trace(DensityMatrix(layout, projected / prob), rest)
        outcomes.append(MeasurementOutcome(k, prob, post))
    return outcomes


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """CPTP map given by Kraus operators, all of shape (output_dim, input_dim)."""

    kraus: tuple

    def __post_init__(self):
        ops = tuple(tensor.as_matrix(k) for k in self.kraus)
        if not ops:
            raise InputError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(k.shape != shape for k in ops):
            raise InputError("Kraus operators have inconsistent shapes")
        completeness = sum(k.conj().T @ k for k in ops)
        dev = float(np.max(np.abs(completeness - np.eye(shape[1]))))
        if dev > 1e-9:
            raise InputError(f"Kraus operators are not trace preserving (deviation {dev:.3e})")
        object.__setattr__(self, "kraus", ops)

    @property
    def input_dim(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def output_dim(self) -> int:
        return self.kraus[0].shape[0]

    def __call__(self, mat: np.ndarray) -> np.ndarray:
        return sum(k @ mat @ k.conj().T for k in self.kraus)

    def to_json(self) -> dict:
        return {"dim": self.input_dim, "kraus": [tensor.to_json(k) for k in self.kraus]}

    @classmethod
    def from_json(cls, obj) -> "KrausChannel":
        try:
            ops = [tensor.from_json(k) for k in obj["kraus"]]
            dim = int(obj.get("dim", ops[0].shape[1] if ops else 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed channel JSON: {exc}") from exc
        ch = cls(tuple(ops))
        if ch.input_dim != dim:
            raise InputError(f"channel JSON declares dim {dim} but operators act on {ch.input_dim}")
        return ch


def _dephasing_projectors(dim: int, basis) -> list[np.ndarray]:
    if isinstance(basis, str) and basis == "ud":
        return list(ud_projectors(dim))
    b = _basis_matrix(basis, dim)
    return [np.outer(b[:, k], b[:, k].conj()) for k in range(dim)]


def _weyl_operators(dim: int):
    shift = np.roll(np.eye(dim), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(dim) / dim))
    for j in range(dim):
        for k in range(dim):
            if j or k:
                yield np.linalg.matrix_power(shift, j) @ np.linalg.matrix_power(clock, k)


def make_channel(kind: str, dim: int, strength: float = 0.0, basis=None) -> KrausChannel:
    """Standard decoherence channels.

    Args:
        kind: ``"dephasing"``, ``"depolarizing"`` or ``"identity"``.
        dim: Dimension the channel acts on.
        strength: Dephasing multiplies coherences between different basis
            elements by ``1 - strength``; depolarizing maps
            ``rho -> (1 - strength) rho + strength I / dim``.
        basis: For dephasing, ``None``/``"computational"``, ``"ud"`` (the
            up/down block split of Alice), or a unitary whose columns form the
            basis.
    """
    if int(dim) != dim or dim < 2:
        raise InputError(f"channel dimension must be an integer >= 2, got {dim}")
    dim = int(dim)
    if not 0.0 <= strength <= 1.0:
        raise InputError(f"channel strength must lie in [0, 1], got {strength}")
    eye = np.eye(dim, dtype=complex)
    if kind == "identity":
        return KrausChannel((eye,))
    if kind == "dephasing":
        ops = [np.sqrt(1.0 - strength) * eye]
        ops += [np.sqrt(strength) * p for p in _dephasing_projectors(dim, basis)]
    elif kind == "depolarizing":
        ops = [np.sqrt(1.0 - strength + strength / dim**2) * eye]
        ops += [np.sqrt(strength) / dim * w for w in _weyl_operators(dim)]
    else:
        raise InputError(f"unknown channel kind {kind!r}")
    return KrausChannel(tuple(k for k in ops if np.any(k)))


def apply_channel(rho: DensityMatrix, ch: KrausChannel, wire: str) -> DensityMatrix:
    layout = rho.layout
    if layout.dim(wire) != ch.input_dim:
        raise InputError(f"channel acts on dimension {ch.input_dim}, wire {wire!r} has {layout.dim(wire)}")
    out = np.zeros((rho.dim // ch.input_dim * ch.output_dim,) * 2, dtype=complex)
    for k in ch.kraus:
        full = embed_operator(k, layout, [wire])
        out += full @ rho.mat @ full.conj().T
    subs = tuple((label, ch.output_dim if label == wire else dim) for label, dim in layout.subsystems)
    return DensityMatrix(SubsystemLayout(subs), out)


def memory_pair(epsilon: float, d_A: int) -> tuple[PureState, PureState]:
    """Alice's two memory records with overlap ``epsilon``.

    The first record is the first "up" level; the second mixes it with the
    first "down" level so that ``epsilon = 0`` gives orthogonal up/down records.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise InputError(f"epsilon must lie in [0, 1], got {epsilon}")
    if int(d_A) != d_A or d_A < 2:
        raise InputError(f"Alice dimension must be an integer >= 2, got {d_A}")
    d_A = int(d_A)
    layout = SubsystemLayout((("A", d_A),))
    xi = np.zeros(d_A, dtype=complex)
    xi[0] = 1.0
    zeta = np.zeros(d_A, dtype=complex)
    zeta[0] = epsilon
    zeta[d_A // 2] = np.sqrt(1.0 - epsilon**2)
    return PureState(layout, xi), PureState(layout, zeta)
