"""States of the modified Wigner's-friend protocol and their analysis.

Layouts used here:

* Alice's lab, ``a, t, m``: ancilla and target qubits plus the measured qubit.
* Wigner's description, ``a, t, A``: the two qubits and Alice's memory.

Trace norms are standard (sum of absolute eigenvalues). In that convention
the negativity of Wigner's state across ``a|tA`` is
``0.5 * ||p tau - (1 - p) upsilon||_1``, i.e. a quarter of
``||tau - upsilon||_1`` at ``p = 1/2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import tensor
from .circuits import CNOT, H, KrausChannel, apply_unitary, ghz_state, make_channel, memory_pair, ud_projectors
from .errors import InputError, NumericalError
from .metrics import (
    POVM,
    negativity,
    povm_classical_distance,
    supports_disjoint,
)
from .states import Bipartition, DensityMatrix, SubsystemLayout, partial_trace, product_state, to_density
from .tensor import TOL_EQ

LAB_LAYOUT = SubsystemLayout((("a", 2), ("t", 2), ("m", 2)))

PSI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
PSI_MINUS = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2)
BELL_PLUS = np.outer(PSI_PLUS, PSI_PLUS)
BELL_MINUS = np.outer(PSI_MINUS, PSI_MINUS)


def _check_p(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise InputError(f"p must lie in [0, 1], got {p}")
    return float(p)


def wigner_layout(d_A: int) -> SubsystemLayout:
    return SubsystemLayout((("a", 2), ("t", 2), ("A", d_A)))


def alice_lab_state(p: float) -> DensityMatrix:
    """p |Psi+><Psi+| (x) |0><0| + (1-p) |Psi-><Psi-| (x) |1><1| on ``a, t, m``."""
    p = _check_p(p)
    zero = np.diag([1.0, 0.0])
    one = np.diag([0.0, 1.0])
    return DensityMatrix(LAB_LAYOUT, p * np.kron(BELL_PLUS, zero) + (1 - p) * np.kron(BELL_MINUS, one))


def circuit_lab_state(p: float) -> DensityMatrix:
    """Alice's lab state built gate by gate: GHZ, Hadamard on a, CNOT a->t, lose e."""
    psi = ghz_state(p)
    psi = apply_unitary(psi, H, ["a"])
    psi = apply_unitary(psi, CNOT, ["a", "t"])
    return partial_trace(to_density(psi), ["a", "t", "m"])


def resolve_channel(spec, dim: int, base_dir: Path | None = None) -> KrausChannel:
    """Build a channel from a scenario channel spec (or pass a ``KrausChannel`` through).

    Spec keys: ``type`` (dephasing, depolarizing, identity, kraus),
    ``strength``, ``basis`` (``ud`` or ``computational``) and ``kraus_file``
    for user-supplied Kraus operators.
    """
    if isinstance(spec, KrausChannel):
        ch = spec
    elif spec is None:
        ch = make_channel("identity", dim)
    elif isinstance(spec, dict):
        kind = spec.get("type", "identity")
        if kind == "kraus":
            path = spec.get("kraus_file")
            if not path:
                raise InputError("channel type 'kraus' needs a kraus_file")
            path = Path(path)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            try:
                obj = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(f"cannot read Kraus file {path}: {exc}") from exc
            ch = KrausChannel.from_json(obj)
        else:
            basis = spec.get("basis", "ud")
            if basis not in ("ud", "computational"):
                raise InputError(f"unknown channel basis {basis!r}")
            try:
                strength = float(spec.get("strength", 0.0))
            except (TypeError, ValueError):
                raise InputError(f"channel strength must be a number, got {spec.get('strength')!r}") from None
            ch = make_channel(kind, dim, strength, basis)
    else:
        raise InputError(f"cannot interpret channel spec {spec!r}")
    if ch.input_dim != dim or ch.output_dim != dim:
        raise InputError(f"channel maps {ch.input_dim} -> {ch.output_dim}, Alice has dimension {dim}")
    return ch


@dataclass(frozen=True)
class AliceModel:
    d_A: int = 2
    epsilon: float = 0.0
    channel: object = None

    def __post_init__(self):
        if int(self.d_A) != self.d_A or self.d_A < 2:
            raise InputError(f"Alice dimension must be an integer >= 2, got {self.d_A}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise InputError(f"epsilon must lie in [0, 1], got {self.epsilon}")


def alice_state_pair(model: AliceModel, base_dir: Path | None = None) -> tuple[DensityMatrix, DensityMatrix]:
    """Alice's decohered memory states: the channel applied to each memory record."""
    ch = resolve_channel(model.channel, model.d_A, base_dir)
    xi, zeta = memory_pair(model.epsilon, model.d_A)
    tau = DensityMatrix(xi.layout, ch(to_density(xi).mat))
    upsilon = DensityMatrix(zeta.layout, ch(to_density(zeta).mat))
    return tau, upsilon


def _memory_matrix(x) -> np.ndarray:
    return x.mat if isinstance(x, DensityMatrix) else tensor.as_matrix(x, square=True)


def wigner_state(p: float, tau, upsilon) -> DensityMatrix:
    """p |Psi+><Psi+| (x) tau + (1-p) |Psi-><Psi-| (x) upsilon on ``a, t, A``."""
    p = _check_p(p)
    t, u = _memory_matrix(tau), _memory_matrix(upsilon)
    if t.shape != u.shape:
        raise InputError(f"memory states differ in dimension: {t.shape} vs {u.shape}")
    return DensityMatrix(wigner_layout(t.shape[0]), p * np.kron(BELL_PLUS, t) + (1 - p) * np.kron(BELL_MINUS, u))


@dataclass(frozen=True, eq=False)
class PrivateBlocks:
    """Diagonal block ``xi_block`` and off-diagonal block ``zeta_block`` of a private state.

    In the qubit basis 00, 01, 10, 11 the state reads
    ``[[xi, 0, 0, zeta], [0, 0, 0, 0], [0, 0, 0, 0], [zeta, 0, 0, xi]]``.
    """

    xi_block: np.ndarray
    zeta_block: np.ndarray

    def reassemble(self) -> np.ndarray:
        d = self.xi_block.shape[0]
        out = np.zeros((4 * d, 4 * d), dtype=complex)
        out[:d, :d] = self.xi_block
        out[3 * d:, 3 * d:] = self.xi_block
        out[:d, 3 * d:] = self.zeta_block
        out[3 * d:, :d] = self.zeta_block
        return out


_QUBIT_BASIS = ("00", "01", "10", "11")


def private_blocks(rho: DensityMatrix) -> PrivateBlocks:
    layout = rho.layout
    if layout.labels[:2] != ("a", "t") or layout.dims[:2] != (2, 2) or len(layout.labels) != 3:
        raise InputError(f"private_blocks expects layout a, t, A; got {layout.to_json()}")
    d = layout.dims[2]
    blocks = rho.mat.reshape(4, d, 4, d).transpose(0, 2, 1, 3)
    for i in range(4):
        for j in range(4):
            if (i in (1, 2) or j in (1, 2)) and np.max(np.abs(blocks[i, j])) > 1e-10:
                raise InputError(f"block ({_QUBIT_BASIS[i]},{_QUBIT_BASIS[j]}) is nonzero; "
                                 "state is not of private-state form")
    xi, zeta = blocks[0, 0], blocks[0, 3]
    if np.max(np.abs(blocks[3, 3] - xi)) > 1e-10:
        raise InputError("block (11,11) differs from block (00,00)")
    if np.max(np.abs(blocks[3, 0] - zeta)) > 1e-10:
        raise InputError("block (11,00) differs from block (00,11)")
    return PrivateBlocks(xi.copy(), zeta.copy())


def key_security(rho: DensityMatrix) -> float:
    """Trace norm of the off-diagonal key block, between 0 and 1/2.

    1/2 means a perfectly secure key bit. The value coincides with the
    negativity across ``a|tA``; a mismatch raises ``NumericalError``.
    """
    value = tensor.schatten1(private_blocks(rho).zeta_block)
    neg = negativity(rho, "a|tA")
    if abs(value - neg) > TOL_EQ:
        raise NumericalError(f"key block norm {value!r} disagrees with negativity {neg!r}")
    return value


def semiclassical_bound(tau, upsilon, povm: POVM) -> float:
    """Key-security value obtained by replacing Alice with the outcome statistics of ``povm``.

    Half of the halved classical l1 distance, so it is directly comparable
    with ``key_security`` and never exceeds it.
    """
    return 0.5 * povm_classical_distance(_memory_matrix(tau), _memory_matrix(upsilon), povm)


def ud_povm(d_A: int) -> POVM:
    return POVM(ud_projectors(d_A))


def traced_negativity(p: float, tau=None, upsilon=None) -> float:
    """Negativity across ``a|t`` after discarding Alice from Wigner's state.

    Equals ``|1/2 - p|`` whatever Alice's memory states are; the defaults
    are orthogonal qubit records.
    """
    p = _check_p(p)
    if tau is None or upsilon is None:
        xi, zeta = memory_pair(0.0, 2)
        tau, upsilon = to_density(xi), to_density(zeta)
    rho = wigner_state(p, tau, upsilon)
    value = negativity(partial_trace(rho, ["a", "t"]), "a|t")
    if abs(value - abs(0.5 - p)) > 1e-10:
        raise NumericalError(f"traced negativity {value!r} deviates from |1/2 - p| = {abs(0.5 - p)!r}")
    return value


@dataclass(frozen=True, eq=False)
class Theorem1Instance:
    """Ensemble ``sum_i p_i sigma_XY;i (x) sigma_Z;i`` given as (weight, pair, shield) triples."""

    members: tuple

    def __post_init__(self):
        members = tuple((float(w), pair, shield) for w, pair, shield in self.members)
        if not members:
            raise InputError("instance needs at least one member")
        weights = np.array([w for w, _, _ in members])
        if np.any(weights <= 0):
            raise InputError("weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-10:
            raise InputError(f"weights sum to {weights.sum()!r}, expected 1")
        pair_layout, shield_layout = members[0][1].layout, members[0][2].layout
        for _, pair, shield in members:
            if pair.layout != pair_layout or shield.layout != shield_layout:
                raise InputError("all members must share the pair and shield layouts")
        if set(pair_layout.labels) & set(shield_layout.labels):
            raise InputError("pair and shield labels overlap")
        object.__setattr__(self, "members", members)

    @property
    def pair_layout(self) -> SubsystemLayout:
        return self.members[0][1].layout

    @property
    def shield_layout(self) -> SubsystemLayout:
        return self.members[0][2].layout

    def state(self) -> DensityMatrix:
        parts = [w * product_state(pair, shield).mat for w, pair, shield in self.members]
        layout = SubsystemLayout(self.pair_layout.subsystems + self.shield_layout.subsystems)
        return DensityMatrix(layout, sum(parts))

    def to_json(self) -> dict:
        return {"members": [{"weight": w, "pair": pair.to_json(), "shield": shield.to_json()}
                            for w, pair, shield in self.members]}


def _is_pure(state: DensityMatrix) -> bool:
    return abs(float(np.real(np.trace(state.mat @ state.mat))) - 1.0) <= 1e-9


def shield_distinguishability(inst: Theorem1Instance) -> list[float]:
    """Per-member probability of identifying the shield without error.

    1 for shields with pairwise disjoint supports (or a single member),
    ``1 - |<psi_1|psi_2>|`` for two equally weighted pure shields, and 0
    otherwise, which keeps the lower bound valid but trivial.
    """
    shields = [s for _, _, s in inst.members]
    if len(shields) == 1 or supports_disjoint(shields):
        return [1.0] * len(shields)
    weights = [w for w, _, _ in inst.members]
    if len(shields) == 2 and abs(weights[0] - weights[1]) <= 1e-10 and all(_is_pure(s) for s in shields):
        overlap = np.sqrt(max(0.0, float(np.real(np.trace(shields[0].mat @ shields[1].mat)))))
        return [float(1.0 - overlap)] * 2
    return [0.0] * len(shields)


@dataclass(frozen=True)
class Theorem1Result:
    lower: float
    value_xz_y: float
    value_x_yz: float
    upper: float
    shields_disjoint: bool
    q: tuple = field(default=())
    tolerance: float = TOL_EQ

    @property
    def sandwich_ok(self) -> bool:
        tol = self.tolerance
        return all(self.lower - tol <= v <= self.upper + tol for v in (self.value_xz_y, self.value_x_yz))

    @property
    def partitions_equal(self) -> bool:
        return abs(self.value_xz_y - self.value_x_yz) <= self.tolerance

    @property
    def saturated(self) -> bool | None:
        """Whether value equals upper bound; ``None`` unless shields are disjoint."""
        if not self.shields_disjoint:
            return None
        return max(abs(self.value_xz_y - self.upper), abs(self.value_x_yz - self.upper)) <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "lower": self.lower,
            "value_xz_y": self.value_xz_y,
            "value_x_yz": self.value_x_yz,
            "upper": self.upper,
            "shields_disjoint": self.shields_disjoint,
            "sandwich_ok": self.sandwich_ok,
            "partitions_equal": self.partitions_equal,
            "saturated": self.saturated,
        }


def theorem1_bounds(inst: Theorem1Instance, bip_pair=None, tolerance: float = TOL_EQ) -> Theorem1Result:
    """Entanglement sandwich for an ensemble with shields, with negativity as the measure.

    ``bip_pair`` splits the pair labels into X|Y (default: first label versus
    the rest). The two assisted values are the negativities across XZ|Y and
    X|YZ; lower and upper bounds come from the members' own negativities.
    Check the result's ``sandwich_ok``, ``partitions_equal`` and
    ``saturated`` flags.
    """
    pair_labels = inst.pair_layout.labels
    if bip_pair is None:
        bip_pair = Bipartition([pair_labels[0]], pair_labels[1:])
    elif not isinstance(bip_pair, Bipartition):
        bip_pair = Bipartition.parse(bip_pair)
    bip_pair.check(inst.pair_layout)
    if bip_pair.labels != set(pair_labels):
        raise InputError(f"bipartition {bip_pair} must cover the pair labels {list(pair_labels)}")
    z = set(inst.shield_layout.labels)
    rho = inst.state()
    value_xz_y = negativity(rho, Bipartition(bip_pair.left | z, bip_pair.right))
    value_x_yz = negativity(rho, Bipartition(bip_pair.left, bip_pair.right | z))
    member_neg = [negativity(pair, bip_pair) for _, pair, _ in inst.members]
    q = shield_distinguishability(inst)
    weights = [w for w, _, _ in inst.members]
    upper = float(sum(w * e for w, e in zip(weights, member_neg)))
    lower = float(max(w * qi * e for w, qi, e in zip(weights, q, member_neg)))
    disjoint = len(inst.members) == 1 or supports_disjoint([s for _, _, s in inst.members])
    return Theorem1Result(lower, value_xz_y, value_x_yz, upper, disjoint, tuple(q), tolerance)
