"""Seeded random states, unitaries, channels and POVMs for property sweeps.

All draws go through ``numpy.random.Generator`` on the counter-based Philox
bit generator, so a 64-bit seed fixes every sample.
"""

from __future__ import annotations

import numpy as np

from .circuits import KrausChannel
from .errors import InputError
from .metrics import POVM
from .protocol import Theorem1Instance
from .states import DensityMatrix, SubsystemLayout


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) & 0xFFFFFFFFFFFFFFFF))


def _ginibre(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_pure_vector(d: int, rng) -> np.ndarray:
    v = _ginibre(rng, d, 1)[:, 0]
    return v / np.linalg.norm(v)


def random_unitary(d: int, rng) -> np.ndarray:
    """Haar-random unitary (QR of a Ginibre matrix with the R-diagonal phases removed)."""
    q, r = np.linalg.qr(_ginibre(rng, d, d))
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_density(d: int, rng, *, pure: bool = False, label: str = "A") -> DensityMatrix:
    """Random state on one subsystem.

    Mixed states are marginals of a random pure state on a ``d x d`` space.
    """
    layout = SubsystemLayout(((label, d),))
    if pure:
        v = random_pure_vector(d, rng)
        return DensityMatrix(layout, np.outer(v, v.conj()))
    psi = random_pure_vector(d * d, rng).reshape(d, d)
    rho = psi @ psi.conj().T
    return DensityMatrix(layout, (rho + rho.conj().T) / 2 / np.trace(rho).real)


def random_state_on(layout, rng, *, pure: bool = False) -> DensityMatrix:
    layout = SubsystemLayout.of(layout)
    d = layout.total_dim
    single = random_density(d, rng, pure=pure)
    return DensityMatrix(layout, single.mat)


def random_isometry(d_in: int, d_out: int, rng) -> np.ndarray:
    q, _ = np.linalg.qr(_ginibre(rng, d_out, d_in))
    return q


def random_channel(d: int, rng, n_kraus: int | None = None) -> KrausChannel:
    """Random CPTP map on dimension ``d`` from a compressed random isometry."""
    k = n_kraus if n_kraus is not None else int(rng.integers(1, d + 2))
    v = random_isometry(d, d * k, rng)
    return KrausChannel(tuple(v[j * d:(j + 1) * d, :] for j in range(k)))


def random_povm(d: int, rng, n_outcomes: int | None = None) -> POVM:
    n = n_outcomes if n_outcomes is not None else int(rng.integers(2, 2 * d + 1))
    ch = random_channel(d, rng, n)
    effects = [k.conj().T @ k for k in ch.kraus]
    return POVM(tuple((e + e.conj().T) / 2 for e in effects))


def _random_weights(n: int, rng) -> np.ndarray:
    w = rng.exponential(size=n) + 1e-3
    return w / w.sum()


def random_theorem1_instance(rng, dims=(2, 2, 2), *, members: int | None = None,
                             disjoint: bool = False, labels=("X", "Y", "Z")):
    """Random ensemble of pair states with shields for the sandwich checks.

    ``dims`` gives the X, Y and Z dimensions. With ``disjoint=True`` the
    shields live on mutually orthogonal random subspaces of Z, which needs
    ``members <= dims[2]``. Otherwise the draw mixes three flavours: generic
    mixed shields, pure shields, and two equally weighted pure shields.
    """
    dx, dy, dz = dims
    pair_layout = SubsystemLayout(((labels[0], dx), (labels[1], dy)))
    shield_layout = SubsystemLayout(((labels[2], dz),))
    max_members = dz if disjoint else 4
    n = members if members is not None else int(rng.integers(1, max_members + 1))
    weights = _random_weights(n, rng)
    flavour = "disjoint" if disjoint else ("mixed", "pure", "equal-pure")[int(rng.integers(3))]
    if flavour == "equal-pure":
        n = 2
        weights = np.array([0.5, 0.5])
    pairs = [random_state_on(pair_layout, rng, pure=bool(rng.integers(2))) for _ in range(n)]
    if flavour == "disjoint":
        if n > dz:
            raise InputError(f"{n} disjoint shields do not fit in dimension {dz}")
        u = random_unitary(dz, rng)
        cuts = np.sort(rng.choice(np.arange(1, dz), size=n - 1, replace=False)) if n > 1 else []
        groups = np.split(np.arange(dz), cuts)
        shields = []
        for g in groups:
            basis = u[:, g]
            mix = random_density(len(g), rng).mat if len(g) > 1 else np.ones((1, 1))
            shields.append(DensityMatrix(shield_layout, basis @ mix @ basis.conj().T))
    else:
        pure = flavour != "mixed"
        shields = [DensityMatrix(shield_layout, random_density(dz, rng, pure=pure).mat) for _ in range(n)]
    return Theorem1Instance(tuple(zip(weights, pairs, shields)))
