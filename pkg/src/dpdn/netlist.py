"""Netlist serialization: structural JSON and SPICE subcircuits.

The JSON document is a loss-free, byte-stable image of a canonical
network (format_version 1).  SPICE emission targets the pull-down slot
of a dynamic differential gate: a ``.SUBCKT`` with ports X, Y, Z and
both rails of every input, one NMOS line per device in canonical
order.  Complement rails are written ``<input>_B`` since overbars are
untypeable in netlists.
"""

from __future__ import annotations

import json
import re

from .boolexpr import Literal
from .switchnet import (
    Device,
    ORIGIN_PASS_GATE,
    ORIGIN_SYNTHESIZED,
    SwitchNetwork,
    internal_node,
    renumber,
    validate_network,
)

__all__ = ["FORMAT_VERSION", "NetlistFormatError", "emit_json", "parse_json", "emit_spice"]

FORMAT_VERSION = 1

_POLARITIES = {"positive": False, "negative": True}


class NetlistFormatError(ValueError):
    pass


def emit_json(network: SwitchNetwork) -> bytes:
    """Serialize the canonical form of ``network`` as stable JSON bytes."""
    canonical = renumber(network)
    document = {
        "format_version": FORMAT_VERSION,
        "name": canonical.name,
        "inputs": list(canonical.inputs),
        "internal_count": canonical.internal_count,
        "devices": [
            {
                "id": dev.id,
                "a": dev.a,
                "b": dev.b,
                "gate": {"input": dev.gate.input, "polarity": dev.gate.polarity},
                "origin": dev.origin,
            }
            for dev in canonical.devices
        ],
    }
    return (json.dumps(document, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise NetlistFormatError(message)


def parse_json(data: bytes | str) -> SwitchNetwork:
    """Parse and validate a netlist document back into a network."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetlistFormatError(f"not valid JSON: {exc}") from None
    _require(isinstance(document, dict), "top-level value must be an object")
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        raise NetlistFormatError(f"unknown format_version {version!r} (expected {FORMAT_VERSION})")
    name = document.get("name")
    _require(isinstance(name, str), "name must be a string")
    inputs = document.get("inputs")
    _require(isinstance(inputs, list) and all(isinstance(i, str) for i in inputs), "inputs must be a list of strings")
    internal_count = document.get("internal_count")
    _require(isinstance(internal_count, int) and not isinstance(internal_count, bool), "internal_count must be an integer")
    raw_devices = document.get("devices")
    _require(isinstance(raw_devices, list), "devices must be a list")

    valid_nodes = {"X", "Y", "Z"} | {internal_node(i) for i in range(max(internal_count, 0))}
    devices = []
    for k, entry in enumerate(raw_devices):
        _require(isinstance(entry, dict), f"device #{k} must be an object")
        dev_id = entry.get("id")
        _require(isinstance(dev_id, str) and bool(dev_id), f"device #{k} needs a nonempty string id")
        for key in ("a", "b"):
            node = entry.get(key)
            _require(isinstance(node, str), f"device {dev_id}: {key} must be a string")
            if node not in valid_nodes:
                raise NetlistFormatError(f"device {dev_id}: dangling node reference {node!r}")
        gate = entry.get("gate")
        _require(isinstance(gate, dict), f"device {dev_id}: gate must be an object")
        gate_input = gate.get("input")
        _require(isinstance(gate_input, str), f"device {dev_id}: gate.input must be a string")
        polarity = gate.get("polarity")
        if polarity not in _POLARITIES:
            raise NetlistFormatError(f"device {dev_id}: unknown polarity {polarity!r}")
        origin = entry.get("origin")
        if origin not in (ORIGIN_SYNTHESIZED, ORIGIN_PASS_GATE):
            raise NetlistFormatError(f"device {dev_id}: unknown origin {origin!r}")
        devices.append(Device(dev_id, entry["a"], entry["b"], Literal(gate_input, _POLARITIES[polarity]), origin))

    network = SwitchNetwork(name, tuple(inputs), internal_count, tuple(devices))
    validate_network(network)
    return network


_SUBCKT_NAME_RE = re.compile(r"[^A-Za-z0-9_]")


def emit_spice(network: SwitchNetwork) -> str:
    """Render the canonical network as an NMOS-only SPICE subcircuit.

    Ports are X, Y, Z followed by rails ``I`` and ``I_B`` per input in
    order.  Each device produces one line ``M<k> <a> <rail> <b> 0 NMOS``
    in canonical device order, so structurally distinct canonical
    networks yield distinct text.
    """
    canonical = renumber(network)
    ports = ["X", "Y", "Z"]
    for name in canonical.inputs:
        ports.extend((name, name + "_B"))
    subckt = "DPDN_" + _SUBCKT_NAME_RE.sub("_", canonical.name)
    lines = [f".SUBCKT {subckt} {' '.join(ports)}"]
    for dev in canonical.devices:
        rail = dev.gate.input + ("_B" if dev.gate.negated else "")
        lines.append(f"{dev.id} {dev.a} {rail} {dev.b} 0 NMOS")
    lines.append(".ENDS")
    return "\n".join(lines) + "\n"
