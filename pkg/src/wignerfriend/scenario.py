"""Scenario files: parsing, validation and evaluation into flat reports."""

from __future__ import annotations

import copy
from dataclasses import dataclass
from pathlib import Path

from . import metrics as M
from .circuits import ud_projectors
from .errors import InputError
from .protocol import (
    LAB_LAYOUT,
    AliceModel,
    alice_lab_state,
    alice_state_pair,
    key_security,
    resolve_channel,
    semiclassical_bound,
    traced_negativity,
    ud_povm,
    wigner_layout,
    wigner_state,
)
from .states import Bipartition

METRICS = ("negativity", "witnesses", "key_security", "semiclassical_bound", "traced_negativity", "trace_distance")
DEFAULT_PARTITIONS = ("a|tA", "aA|t")


@dataclass(frozen=True)
class Scenario:
    p: float
    alice: AliceModel
    partitions: tuple[str, ...]
    metrics: tuple[str, ...]
    raw: dict
    base_dir: Path | None = None


def _number(obj, key, default):
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{key!r} must be a number, got {value!r}")
    return value


def parse_scenario(obj, base_dir: Path | None = None) -> Scenario:
    if not isinstance(obj, dict):
        raise InputError("scenario must be a JSON object")
    p = float(_number(obj, "p", 0.5))
    if not 0.0 <= p <= 1.0:
        raise InputError(f"p must lie in [0, 1], got {p}")
    alice_obj = obj.get("alice", {})
    if not isinstance(alice_obj, dict):
        raise InputError("'alice' must be an object")
    d_A = _number(alice_obj, "dim", 2)
    if int(d_A) != d_A:
        raise InputError(f"alice.dim must be an integer, got {d_A}")
    alice = AliceModel(int(d_A), float(_number(alice_obj, "epsilon", 0.0)), alice_obj.get("channel"))
    resolve_channel(alice.channel, alice.d_A, base_dir)

    partitions = tuple(obj.get("partitions", DEFAULT_PARTITIONS))
    wig = wigner_layout(alice.d_A)
    for text in partitions:
        bip = Bipartition.parse(text)
        layout = LAB_LAYOUT if "m" in bip.labels else wig
        bip.check(layout)

    names = tuple(obj.get("metrics", ("negativity",)))
    for name in names:
        if name not in METRICS:
            raise InputError(f"unknown metric {name!r}; choose from {list(METRICS)}")
    return Scenario(p, alice, partitions, names, copy.deepcopy(obj), base_dir)


def run_scenario(sc: Scenario) -> dict:
    """Evaluate the requested metrics.

    Returns a report with the scenario echo, a flat ``metrics`` map, the
    per-partition negativities and a list of warnings for metrics that could
    not be evaluated.
    """
    tau, upsilon = alice_state_pair(sc.alice, sc.base_dir)
    rho_w = wigner_state(sc.p, tau, upsilon)
    values: dict[str, float] = {}
    per_partition: dict[str, float] = {}
    warnings: list[str] = []
    half = abs(sc.p - 0.5) <= 1e-12

    for name in sc.metrics:
        if name == "negativity":
            for text in sc.partitions:
                bip = Bipartition.parse(text)
                rho = alice_lab_state(sc.p) if "m" in bip.labels else rho_w
                per_partition[text] = M.negativity(rho, bip)
                values[f"negativity[{text}]"] = per_partition[text]
        elif name == "witnesses":
            w1, w2 = M.build_witnesses(sc.alice.d_A, *ud_projectors(sc.alice.d_A))
            values["witness_w1"] = M.witness_expectation(rho_w, w1)
            values["witness_w2"] = M.witness_expectation(rho_w, w2)
            values["witness_violation"] = M.witness_violation(rho_w, w1, w2)
        elif name in ("key_security", "semiclassical_bound"):
            if not half:
                warnings.append(f"{name}: only defined at p = 0.5 (got p = {sc.p!r})")
            elif name == "key_security":
                values[name] = key_security(rho_w)
            else:
                values[name] = semiclassical_bound(tau, upsilon, ud_povm(sc.alice.d_A))
        elif name == "traced_negativity":
            values[name] = traced_negativity(sc.p, tau, upsilon)
        elif name == "trace_distance":
            values[name] = M.trace_distance(tau, upsilon)

    return {
        "scenario": sc.raw,
        "metrics": values,
        "negativity": per_partition,
        "warnings": warnings,
    }


SWEEPABLE = ("p", "epsilon", "channel.strength")


def with_parameter(obj: dict, name: str, value: float) -> dict:
    out = copy.deepcopy(obj)
    if name == "p":
        out["p"] = value
    elif name == "epsilon":
        out.setdefault("alice", {})["epsilon"] = value
    elif name == "channel.strength":
        alice = out.setdefault("alice", {})
        channel = alice.get("channel") or {"type": "identity"}
        if not isinstance(channel, dict):
            raise InputError("alice.channel must be an object to sweep its strength")
        channel = dict(channel, strength=value)
        alice["channel"] = channel
    else:
        raise InputError(f"cannot sweep {name!r}; choose from {list(SWEEPABLE)}")
    return out


def parse_grid(text: str) -> tuple[str, list[float]]:
    """Parse ``name=start:stop:step`` into the parameter name and inclusive grid."""
    try:
        name, rng = text.split("=", 1)
        start, stop, step = (float(x) for x in rng.split(":"))
    except ValueError:
        raise InputError(f"sweep spec {text!r} must look like name=start:stop:step") from None
    name = name.strip()
    if name not in SWEEPABLE:
        raise InputError(f"cannot sweep {name!r}; choose from {list(SWEEPABLE)}")
    if step <= 0 or stop < start:
        raise InputError(f"empty sweep grid {text!r}")
    n = int((stop - start) / step + 1e-9) + 1
    return name, [round(start + k * step, 12) for k in range(n)]
