"""Negativity, PPT test, the up/down witnesses and two-state discrimination.

Operator norms are the standard trace norm (sum of absolute eigenvalues).
Classical distances between outcome distributions carry a factor 1/2, so
that the best measurement reaches exactly the trace distance
``0.5 * ||tau - upsilon||_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tensor
from .errors import InputError
from .states import (
    Bipartition,
    DensityMatrix,
    SubsystemLayout,
    partial_trace,
    partial_transpose,
    partial_transpose_matrix,
)
from .tensor import TOL_PSD

SUPPORT_CUTOFF = 1e-9


def _as_bipartition(bip) -> Bipartition:
    return bip if isinstance(bip, Bipartition) else Bipartition.parse(bip)


def _restrict(rho: DensityMatrix, bip: Bipartition) -> DensityMatrix:
    bip.check(rho.layout)
    if bip.labels == set(rho.layout.labels):
        return rho
    return partial_trace(rho, bip.labels)


def partial_transpose_spectrum(rho: DensityMatrix, bip) -> np.ndarray:
    """Eigenvalues (descending) of the partial transpose on the left side of ``bip``.

    Labels absent from ``bip`` are traced out first.
    """
    bip = _as_bipartition(bip)
    reduced = _restrict(rho, bip)
    return tensor.eigvalsh(partial_transpose(reduced, bip.left))


def negativity(rho: DensityMatrix, bip) -> float:
    """Negativity ``(||rho^T_left||_1 - 1) / 2`` across ``bip``.

    Computed as the absolute sum of the negative partial-transpose
    eigenvalues, which is the same number without the cancellation in the
    subtraction.
    """
    ev = partial_transpose_spectrum(rho, bip)
    return 0.0 - float(np.sum(ev[ev < 0]))


def is_ppt(rho: DensityMatrix, bip) -> bool:
    return bool(partial_transpose_spectrum(rho, bip)[-1] >= TOL_PSD)


@dataclass(frozen=True, eq=False)
class Witness:
    op: np.ndarray
    layout: SubsystemLayout
    partitions: tuple[Bipartition, ...]

    def __post_init__(self):
        op = tensor.as_matrix(self.op, square=True)
        if not tensor.is_hermitian(op):
            raise InputError("witness operator must be Hermitian")
        layout = SubsystemLayout.of(self.layout)
        if op.shape[0] != layout.total_dim:
            raise InputError("witness size does not match its layout")
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "partitions", tuple(_as_bipartition(b) for b in self.partitions))

    def to_json(self) -> dict:
        return {
            "layout": self.layout.to_json(),
            "op": tensor.to_json(self.op),
            "partitions": [b.format(self.layout) for b in self.partitions],
        }


def _flipped_bell_pt() -> np.ndarray:
    # |Phi+> = (|01> + |10>)/sqrt(2) on (a, t), transposed on t
    phi = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
    return partial_transpose_matrix(np.outer(phi, phi.conj()), [2, 2], [1])


def build_witnesses(d_A: int, up_projector, down_projector) -> tuple[Witness, Witness]:
    """The up- and down-conditioned witnesses on layout ``a, t, A``.

    Both have nonnegative expectation on states separable across ``a|tA``
    or ``aA|t``.
    """
    up = tensor.as_matrix(up_projector, square=True)
    down = tensor.as_matrix(down_projector, square=True)
    if up.shape != (d_A, d_A) or down.shape != (d_A, d_A):
        raise InputError(f"projectors must be {d_A}x{d_A}")
    eye = np.eye(d_A)
    checks = {
        "up is not a projector": np.max(np.abs(up @ up - up)),
        "down is not a projector": np.max(np.abs(down @ down - down)),
        "up and down do not sum to identity": np.max(np.abs(up + down - eye)),
        "up and down are not orthogonal": np.max(np.abs(up @ down)),
        "up is not Hermitian": np.max(np.abs(up - up.conj().T)),
    }
    for msg, dev in checks.items():
        if dev > 1e-10:
            raise InputError(msg)
    layout = SubsystemLayout((("a", 2), ("t", 2), ("A", d_A)))
    certified = (Bipartition.parse("aA|t"), Bipartition.parse("a|tA"))
    core = _flipped_bell_pt()
    return (Witness(np.kron(core, up), layout, certified),
            Witness(np.kron(core, down), layout, certified))


def _same_layout(a: SubsystemLayout, b: SubsystemLayout) -> None:
    if a.subsystems != b.subsystems:
        raise InputError(f"layout mismatch: {a.to_json()} vs {b.to_json()}")


def witness_expectation(rho: DensityMatrix, w: Witness) -> float:
    _same_layout(rho.layout, w.layout)
    return float(np.real(np.trace(rho.mat @ w.op)))


def witness_violation(rho: DensityMatrix, w1: Witness, w2: Witness) -> float:
    """Largest amount by which either witness goes negative (0 if neither does).

    This certifies a lower bound on entanglement; it is not itself an
    entanglement value.
    """
    return max(0.0, -min(witness_expectation(rho, w1), witness_expectation(rho, w2)))


def _mat(x) -> np.ndarray:
    return x.mat if isinstance(x, DensityMatrix) else tensor.as_matrix(x, square=True)


def _pair(tau, upsilon) -> tuple[np.ndarray, np.ndarray]:
    t, u = _mat(tau), _mat(upsilon)
    if t.shape != u.shape:
        raise InputError(f"state dimensions differ: {t.shape} vs {u.shape}")
    return t, u


def trace_distance(tau, upsilon) -> float:
    t, u = _pair(tau, upsilon)
    return 0.5 * tensor.schatten1(t - u)


@dataclass(frozen=True, eq=False)
class POVM:
    effects: tuple

    def __post_init__(self):
        effects = tuple(tensor.as_matrix(e, square=True) for e in self.effects)
        if not effects:
            raise InputError("a POVM needs at least one effect")
        d = effects[0].shape[0]
        for i, e in enumerate(effects):
            if e.shape != (d, d):
                raise InputError("POVM effects have inconsistent shapes")
            if not tensor.is_hermitian(e):
                raise InputError(f"POVM effect {i} is not Hermitian")
            if tensor.eigvalsh(e)[-1] < TOL_PSD:
                raise InputError(f"POVM effect {i} is not positive semidefinite")
        if np.max(np.abs(sum(effects) - np.eye(d))) > 1e-9:
            raise InputError("POVM effects do not sum to identity")
        object.__setattr__(self, "effects", effects)

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    def to_json(self) -> dict:
        return {"effects": [tensor.to_json(e) for e in self.effects]}

    @classmethod
    def from_json(cls, obj) -> "POVM":
        try:
            return cls(tuple(tensor.from_json(e) for e in obj["effects"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed POVM JSON: {exc}") from exc


def projective_povm(projectors: Sequence[np.ndarray]) -> POVM:
    return POVM(tuple(projectors))


def helstrom_povm(tau, upsilon) -> POVM:
    """Projectors onto the nonnegative and negative eigenspaces of ``tau - upsilon``."""
    t, u = _pair(tau, upsilon)
    vals, vecs = tensor.hermitian_eigen(t - u)
    pos = vecs[:, vals >= 0]
    plus = pos @ pos.conj().T
    return POVM((plus, np.eye(t.shape[0]) - plus))


def outcome_probabilities(state, povm: POVM) -> np.ndarray:
    m = _mat(state)
    if m.shape[0] != povm.dim:
        raise InputError(f"POVM dimension {povm.dim} does not match state dimension {m.shape[0]}")
    return np.array([np.real(np.trace(e @ m)) for e in povm.effects])


def povm_classical_distance(tau, upsilon, povm: POVM) -> float:
    """Half the l1 distance between the outcome distributions of ``povm``."""
    t, u = _pair(tau, upsilon)
    return 0.5 * float(np.sum(np.abs(outcome_probabilities(t, povm) - outcome_probabilities(u, povm))))


def support_projector(state) -> np.ndarray:
    vals, vecs = tensor.hermitian_eigen(_mat(state))
    v = vecs[:, vals > SUPPORT_CUTOFF]
    return v @ v.conj().T


def supports_disjoint(states) -> bool:
    states = list(states)
    if len(states) < 2:
        raise InputError("need at least two states")
    projs = [support_projector(s) for s in states]
    if len({p.shape for p in projs}) != 1:
        raise InputError("states have different dimensions")
    for i in range(len(projs)):
        for j in range(i + 1, len(projs)):
            if np.real(np.trace(projs[i] @ projs[j])) > SUPPORT_CUTOFF:
                return False
    return True
