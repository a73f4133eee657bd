"""Switch-level model of differential pull-down networks.

A :class:`SwitchNetwork` is an undirected multigraph of ideal switches
over the output terminals ``X`` and ``Y``, the common ground terminal
``Z``, and internal nodes ``W0 .. W<k-1>``.  Each device conducts
exactly when its gate rail is 1.  Rails come in complementary pairs:
under a complementary assignment input ``A`` at ``v`` implies rail
``!A`` at ``not v``, while a precharged input drives both rails to 0,
leaving both of its switches open.

Switches are modeled as ideal bidirectional connectivity elements —
charge sharing, thresholds and delays are out of scope — so every
analysis in the package reduces to reachability over closed devices.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .boolexpr import (
    And,
    BoolExpr,
    IDENT_RE,
    Lit,
    Literal,
    Or,
    complement,
    input_set,
)

__all__ = [
    "PRECHARGE",
    "ORIGIN_SYNTHESIZED",
    "ORIGIN_PASS_GATE",
    "EXTERNAL_NODES",
    "Device",
    "SwitchNetwork",
    "MalformedNetworkError",
    "DuplicateDeviceWarning",
    "internal_node",
    "is_internal_node",
    "node_sort_key",
    "validate_network",
    "build_genuine",
    "closed_edges",
    "conducting_components",
    "renumber",
    "canonical_equal",
]

#: Assignment value meaning "both rails of this input are still at 0".
PRECHARGE = "precharge"

ORIGIN_SYNTHESIZED = "synthesized"
ORIGIN_PASS_GATE = "pass_gate"

EXTERNAL_NODES = ("X", "Y", "Z")

_NODE_NAME_RE = re.compile(r"^(?:X|Y|Z|W(?:0|[1-9][0-9]*))$")


class MalformedNetworkError(ValueError):
    pass


class DuplicateDeviceWarning(UserWarning):
    """Two devices share both endpoints and the same gate literal."""


def internal_node(index: int) -> str:
    return f"W{index}"


def is_internal_node(name: str) -> bool:
    return name.startswith("W") and _NODE_NAME_RE.match(name) is not None


def node_sort_key(name: str) -> tuple[int, int]:
    """Total order used for canonical forms: X, Y, internals, then Z."""
    if name == "X":
        return (0, 0)
    if name == "Y":
        return (0, 1)
    if name == "Z":
        return (2, 0)
    if is_internal_node(name):
        return (1, int(name[1:]))
    raise MalformedNetworkError(f"invalid node name {name!r}")


def _gate_sort_key(gate: Literal) -> tuple[str, int]:
    return (gate.input, 1 if gate.negated else 0)


@dataclass(frozen=True)
class Device:
    """A single switch between nodes ``a`` and ``b``, closed when the
    gate literal's rail is 1.  Conduction is symmetric."""

    id: str
    a: str
    b: str
    gate: Literal
    origin: str = ORIGIN_SYNTHESIZED


@dataclass(frozen=True)
class SwitchNetwork:
    """An immutable differential pull-down network.

    ``derivation``, when present, is the series-parallel build tree
    attached by the synthesis operations; it is carried for structural
    path enumeration and ignored by equality and serialization.
    """

    name: str
    inputs: tuple[str, ...]
    internal_count: int
    devices: tuple[Device, ...]
    derivation: object | None = field(default=None, compare=False, repr=False)

    def nodes(self) -> list[str]:
        return ["X", "Y"] + [internal_node(i) for i in range(self.internal_count)] + ["Z"]

    def device_map(self) -> dict[str, Device]:
        return {d.id: d for d in self.devices}


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {item: item for item in items}

    def find(self, item: str) -> str:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self) -> list[set[str]]:
        by_root: dict[str, set[str]] = {}
        for item in self.parent:
            by_root.setdefault(self.find(item), set()).add(item)
        return list(by_root.values())


def validate_network(network: SwitchNetwork, *, strict: bool = True) -> None:
    """Raise :class:`MalformedNetworkError` unless ``network`` is sound.

    Checks node references, internal-node degree, gate inputs,
    rail-name uniqueness, and all-switches-closed reachability from Z.
    Strict mode (the default) additionally requires internal indices to
    be dense in ``0 .. internal_count-1``; :func:`renumber` uses the
    relaxed mode so it can canonicalize sparsely numbered inputs.
    Parallel duplicate devices are tolerated but reported via
    :class:`DuplicateDeviceWarning`.
    """
    if not network.inputs:
        raise MalformedNetworkError("network has no inputs")
    if len(set(network.inputs)) != len(network.inputs):
        raise MalformedNetworkError("duplicate input names")
    rails: set[str] = set()
    for name in network.inputs:
        if not IDENT_RE.fullmatch(name):
            raise MalformedNetworkError(f"invalid input name {name!r}")
        if _NODE_NAME_RE.match(name):
            raise MalformedNetworkError(f"input name {name!r} collides with a node name")
        for rail in (name, name + "_B"):
            if rail in rails:
                raise MalformedNetworkError(f"rail name {rail!r} is not unique")
            rails.add(rail)
    if network.internal_count < 0:
        raise MalformedNetworkError("negative internal node count")
    if not network.devices:
        raise MalformedNetworkError("network has no devices")

    known_inputs = set(network.inputs)
    ids: set[str] = set()
    degree: dict[str, int] = {node: 0 for node in (network.nodes() if strict else EXTERNAL_NODES)}
    seen_edges: set[tuple[str, str, str, bool]] = set()
    for dev in network.devices:
        if not dev.id or dev.id in ids:
            raise MalformedNetworkError(f"duplicate or empty device id {dev.id!r}")
        ids.add(dev.id)
        for node in (dev.a, dev.b):
            if node not in degree:
                if strict or not _NODE_NAME_RE.match(node):
                    raise MalformedNetworkError(f"device {dev.id} references unknown node {node!r}")
                degree[node] = 0
            degree[node] += 1
        if dev.a == dev.b:
            raise MalformedNetworkError(f"device {dev.id} is a self-loop on {dev.a}")
        if dev.gate.input not in known_inputs:
            raise MalformedNetworkError(f"device {dev.id} gated by undeclared input {dev.gate.input!r}")
        if dev.origin not in (ORIGIN_SYNTHESIZED, ORIGIN_PASS_GATE):
            raise MalformedNetworkError(f"device {dev.id} has unknown origin {dev.origin!r}")
        lo, hi = sorted((dev.a, dev.b))
        edge = (lo, hi, dev.gate.input, dev.gate.negated)
        if edge in seen_edges:
            warnings.warn(
                f"parallel duplicate device between {lo} and {hi} gated by {dev.gate}",
                DuplicateDeviceWarning,
                stacklevel=2,
            )
        seen_edges.add(edge)

    for node, node_degree in degree.items():
        if is_internal_node(node) and node_degree < 2:
            raise MalformedNetworkError(f"internal node {node} has degree {node_degree} (< 2)")

    # with every switch closed, the whole graph must hang off Z
    uf = _UnionFind(degree)
    for dev in network.devices:
        uf.union(dev.a, dev.b)
    root = uf.find("Z")
    for node in degree:
        if uf.find(node) != root:
            raise MalformedNetworkError(f"node {node} is unreachable from Z with all switches closed")


def _rail_is_high(gate: Literal, value: object) -> bool:
    if value == PRECHARGE:
        return False
    return bool(value) != gate.negated


def _check_assignment(network: SwitchNetwork, assignment: Mapping[str, object], *, partial: bool) -> None:
    missing = set(network.inputs) - set(assignment)
    extra = set(assignment) - set(network.inputs)
    if missing or extra:
        raise ValueError(f"assignment must cover exactly the network inputs (missing {sorted(missing)}, extra {sorted(extra)})")
    allowed = (0, 1, True, False, PRECHARGE) if partial else (0, 1, True, False)
    for name, value in assignment.items():
        if value not in allowed:
            raise ValueError(f"invalid value {value!r} for input {name!r}")


def closed_edges(network: SwitchNetwork, assignment: Mapping[str, object]) -> set[str]:
    """Device ids conducting under ``assignment`` (0/1 or precharge)."""
    _check_assignment(network, assignment, partial=True)
    return {d.id for d in network.devices if _rail_is_high(d.gate, assignment[d.gate.input])}


def conducting_components(network: SwitchNetwork, assignment: Mapping[str, object]) -> list[frozenset[str]]:
    """Connected components of the closed-switch graph.

    Every node appears in exactly one component; nodes with no closed
    incident device form singletons.  Components are ordered by their
    smallest member so the partition is deterministic.
    """
    closed = closed_edges(network, assignment)
    uf = _UnionFind(network.nodes())
    by_id = network.device_map()
    for dev_id in closed:
        dev = by_id[dev_id]
        uf.union(dev.a, dev.b)
    groups = [frozenset(group) for group in uf.groups()]
    groups.sort(key=lambda group: min(node_sort_key(node) for node in group))
    return groups


def build_genuine(f: BoolExpr, name: str = "genuine") -> SwitchNetwork:
    """Textbook differential realization of ``f``.

    The true branch realizes ``f`` between X and Z as the usual
    series/parallel switch composition (AND in series, OR in parallel);
    the false branch realizes the complement between Y and Z.  The two
    branches share no internal nodes, and the device count is twice the
    literal-occurrence count of ``f``.
    """
    inputs = input_set(f)
    devices: list[Device] = []
    counter = [0]

    def alloc() -> str:
        node = internal_node(counter[0])
        counter[0] += 1
        return node

    def realize(e: BoolExpr, top: str, bottom: str) -> None:
        if isinstance(e, Lit):
            devices.append(Device(f"M{len(devices)}", top, bottom, e.literal))
        elif isinstance(e, And):
            mid = alloc()
            realize(e.left, top, mid)
            realize(e.right, mid, bottom)
        elif isinstance(e, Or):
            realize(e.left, top, bottom)
            realize(e.right, top, bottom)
        else:
            raise TypeError(f"not an expression node: {e!r}")

    realize(f, "X", "Z")
    realize(complement(f), "Y", "Z")
    network = SwitchNetwork(name, tuple(inputs), counter[0], tuple(devices))
    validate_network(network)
    return network


def _device_sort_key(dev: Device) -> tuple:
    lo, hi = sorted((dev.a, dev.b), key=node_sort_key)
    return (node_sort_key(lo), node_sort_key(hi), _gate_sort_key(dev.gate), dev.origin)


def renumber(network: SwitchNetwork) -> SwitchNetwork:
    """Canonical form of ``network``.

    Internal nodes are renumbered in breadth-first order from Z over the
    all-switches-closed graph (ties broken by gate literal, then by kind
    of the far endpoint); devices are then oriented and sorted by
    (min endpoint, max endpoint, gate) and re-labelled M0..  The result
    is idempotent and independent of incoming device order, so two
    isomorphic networks compare equal after renumbering.  Sparse
    internal numbering is accepted and made dense.
    """
    validate_network(network, strict=False)

    incident: dict[str, list[Device]] = {node: [] for node in EXTERNAL_NODES}
    for dev in network.devices:
        incident.setdefault(dev.a, []).append(dev)
        incident.setdefault(dev.b, []).append(dev)

    node_map: dict[str, str] = {"X": "X", "Y": "Y", "Z": "Z"}
    next_index = 0
    queue = ["Z"]
    visited = {"Z"}
    while queue:
        current = queue.pop(0)

        def neighbor_key(dev: Device) -> tuple:
            other = dev.b if dev.a == current else dev.a
            if other in EXTERNAL_NODES:
                rank = (0, other)
            elif other in node_map:
                rank = (1, node_map[other])
            else:
                rank = (2, other)
            return (_gate_sort_key(dev.gate), rank)

        for dev in sorted(incident[current], key=neighbor_key):
            other = dev.b if dev.a == current else dev.a
            if other in visited:
                continue
            visited.add(other)
            if other not in EXTERNAL_NODES:
                node_map[other] = internal_node(next_index)
                next_index += 1
            queue.append(other)

    renamed = []
    for dev in network.devices:
        a, b = node_map[dev.a], node_map[dev.b]
        if node_sort_key(a) > node_sort_key(b):
            a, b = b, a
        renamed.append(replace(dev, a=a, b=b))
    renamed.sort(key=_device_sort_key)

    id_map = {dev.id: f"M{k}" for k, dev in enumerate(renamed)}
    devices = tuple(replace(dev, id=id_map[dev.id]) for dev in renamed)
    derivation = network.derivation.map_ids(id_map) if network.derivation is not None else None
    return SwitchNetwork(network.name, network.inputs, next_index, devices, derivation=derivation)


def canonical_equal(a: SwitchNetwork, b: SwitchNetwork) -> bool:
    """Structural equality up to internal renaming and device ids."""
    ca, cb = renumber(a), renumber(b)
    strip = lambda n: (n.inputs, n.internal_count, tuple((d.a, d.b, d.gate, d.origin) for d in n.devices))
    return strip(ca) == strip(cb)
