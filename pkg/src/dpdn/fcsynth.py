"""Construction of fully connected differential pull-down networks.

A network is fully connected when every internal node reaches an
external node through closed switches under *every* complementary
input, which removes the memory effect of floating nodes and makes the
per-cycle discharged capacitance a constant.

Two entry points build such networks: :func:`fc_from_expr` synthesizes
one directly from a Boolean expression, and :func:`fc_transform`
repositions the devices of an existing genuine network to the same
effect, keeping the device multiset intact.

Both are driven by one recursion over the expression.  For a series
composition ``x & y`` on terminals (T, F, G) the lower network ``y`` is
shared between the branches: ``x`` is realized between T/F and a fresh
internal node W, and ``y`` between W/F and G, so the false branch
becomes ``!x & y | !y`` with the complement of ``x`` landing on W.  A
parallel composition is handled as the mirror image: its complement is
a series composition built with the true and false tops exchanged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Mapping

from .boolexpr import (
    And,
    BoolExpr,
    Lit,
    Literal,
    Or,
    complement,
    format_expression,
    input_set,
    literal_count,
)
from .switchnet import (
    Device,
    SwitchNetwork,
    internal_node,
    validate_network,
)

__all__ = [
    "TerminalMap",
    "SpLit",
    "SpSeries",
    "SpFlip",
    "TransformError",
    "fc_from_expr",
    "fc_transform",
]


class TransformError(ValueError):
    pass


@dataclass(frozen=True)
class TerminalMap:
    """The three nodes a (sub)network is built against.

    ``true_top`` and ``false_top`` carry the function and its
    complement toward the outputs; ``ground`` is the shared lower node.
    Recursion embeds child networks by rebinding these.
    """

    true_top: str
    false_top: str
    ground: str

    def flipped(self) -> "TerminalMap":
        return TerminalMap(self.false_top, self.true_top, self.ground)


# --- series-parallel derivation ------------------------------------------
#
# Synthesis attaches a build tree to the network so that structural
# discharge paths can be enumerated later (and extended by pass-gate
# insertion).  A "hop" is a tuple of device ids traversed as one series
# step; it has more than one entry only for the parallel pair of a
# pass-gate.  Tails hold the hops spliced below a literal's device,
# ordered from the device toward ground.


@dataclass
class SpLit:
    true_device: str
    false_device: str
    true_tail: list[tuple[str, ...]] = field(default_factory=list)
    false_tail: list[tuple[str, ...]] = field(default_factory=list)

    def map_ids(self, ids: Mapping[str, str]) -> "SpLit":
        remap = lambda hop: tuple(ids.get(d, d) for d in hop)
        return SpLit(
            ids.get(self.true_device, self.true_device),
            ids.get(self.false_device, self.false_device),
            [remap(hop) for hop in self.true_tail],
            [remap(hop) for hop in self.false_tail],
        )


@dataclass
class SpSeries:
    top: "SpNode"
    bottom: "SpNode"

    def map_ids(self, ids: Mapping[str, str]) -> "SpSeries":
        return SpSeries(self.top.map_ids(ids), self.bottom.map_ids(ids))


@dataclass
class SpFlip:
    """Marks a parallel composition: the child realizes the complement,
    so its true/false path families are exchanged."""

    inner: "SpNode"

    def map_ids(self, ids: Mapping[str, str]) -> "SpFlip":
        return SpFlip(self.inner.map_ids(ids))


SpNode = SpLit | SpSeries | SpFlip


def _build_fc(
    e: BoolExpr,
    occurrence: "itertools.count[int]",
    terminals: TerminalMap,
    flipped: bool,
    alloc_node: Callable[[], str],
    place: Callable[[int, Literal, str, str], str],
) -> SpNode:
    """Shared recursion behind both construction operations.

    ``place`` is called once per rail of every literal occurrence (in
    preorder of the original expression) and returns the id of the
    device realizing it; fresh synthesis creates devices, the rewrite
    re-endpoints matched ones.
    """
    if isinstance(e, Lit):
        index = next(occurrence)
        lit = e.literal.negate() if flipped else e.literal
        true_dev = place(index, lit, terminals.true_top, terminals.ground)
        false_dev = place(index, lit.negate(), terminals.false_top, terminals.ground)
        return SpLit(true_dev, false_dev)
    if not isinstance(e, (And, Or)):
        raise TypeError(f"not an expression node: {e!r}")
    series = isinstance(e, And) != flipped
    if not series:
        return SpFlip(_build_fc(e, occurrence, terminals.flipped(), not flipped, alloc_node, place))
    mid = alloc_node()
    upper = TerminalMap(terminals.true_top, terminals.false_top, mid)
    lower = TerminalMap(mid, terminals.false_top, terminals.ground)
    top = _build_fc(e.left, occurrence, upper, flipped, alloc_node, place)
    bottom = _build_fc(e.right, occurrence, lower, flipped, alloc_node, place)
    return SpSeries(top, bottom)


def fc_from_expr(f: BoolExpr, name: str = "fc") -> SwitchNetwork:
    """Synthesize a fully connected network realizing ``f``.

    The result realizes ``f`` between X and Z and its complement
    between Y and Z, has exactly twice the literal-occurrence count of
    ``f`` in devices, and carries its series-parallel derivation.
    Internal nodes are allocated in recursion preorder, so the output
    is deterministic.
    """
    inputs = input_set(f)
    devices: list[Device] = []
    counter = [0]

    def alloc_node() -> str:
        node = internal_node(counter[0])
        counter[0] += 1
        return node

    def place(index: int, lit: Literal, a: str, b: str) -> str:
        dev = Device(f"M{len(devices)}", a, b, lit)
        devices.append(dev)
        return dev.id

    root = _build_fc(f, itertools.count(), TerminalMap("X", "Y", "Z"), False, alloc_node, place)
    network = SwitchNetwork(name, tuple(inputs), counter[0], tuple(devices), derivation=root)
    validate_network(network)
    return network


def fc_transform(network: SwitchNetwork, f: BoolExpr, name: str | None = None) -> SwitchNetwork:
    """Rewrite a genuine network for ``f`` into a fully connected one.

    The input must be the textbook series/parallel realization of
    ``(f, !f)`` with disjoint branches, up to node renaming and device
    order.  Every device is kept (same id, gate and origin) and only
    re-endpointed: for each series composition in one branch, the dual
    parallel composition in the other branch is opened and reattached
    to the internal node between the series components.  Raises
    :class:`TransformError` when the network does not decompose against
    ``f``.
    """
    validate_network(network)
    if set(network.inputs) != set(input_set(f)):
        raise TransformError(
            f"network inputs {sorted(network.inputs)} do not match the inputs of {format_expression(f)!r}"
        )
    if len(network.devices) != 2 * literal_count(f):
        raise TransformError(
            f"expected {2 * literal_count(f)} devices for {format_expression(f)!r}, found {len(network.devices)}"
        )
    true_devs, false_devs = _match_genuine(network, f)

    devices: list[Device] = []
    counter = [0]

    def alloc_node() -> str:
        node = internal_node(counter[0])
        counter[0] += 1
        return node

    def place(index: int, lit: Literal, a: str, b: str) -> str:
        dev = true_devs[index] if true_devs[index].gate == lit else false_devs[index]
        if dev.gate != lit:
            raise TransformError(f"no matched device carries gate {lit}")
        moved = replace(dev, a=a, b=b)
        devices.append(moved)
        return moved.id

    root = _build_fc(f, itertools.count(), TerminalMap("X", "Y", "Z"), False, alloc_node, place)
    result = SwitchNetwork(
        name if name is not None else network.name,
        network.inputs,
        counter[0],
        tuple(devices),
        derivation=root,
    )
    validate_network(result)
    return result


# --- matching a network against its genuine realization -------------------


class _Var:
    """Placeholder for a not-yet-bound series internal node."""

    __slots__ = ()


def _unify(term: object, node: str, binding: dict) -> dict | None:
    if isinstance(term, _Var):
        if term in binding:
            return binding if binding[term] == node else None
        # series separators are internal nodes, bound injectively
        if not node.startswith("W") or node in binding.values():
            return None
        extended = dict(binding)
        extended[term] = node
        return extended
    return binding if term == node else None


def _match_branch(
    network: SwitchNetwork,
    e: BoolExpr,
    a: object,
    b: object,
    base: int,
    used: frozenset[str],
    binding: dict,
) -> Iterator[tuple[frozenset[str], dict, dict[int, Device]]]:
    """Yield ways of matching the genuine realization of ``e`` between
    endpoint terms ``a`` and ``b``, mapping each literal occurrence
    (preorder index, offset by ``base``) to a distinct device."""
    if isinstance(e, Lit):
        for dev in network.devices:
            if dev.id in used or dev.gate != e.literal:
                continue
            for p, q in ((dev.a, dev.b), (dev.b, dev.a)):
                bound = _unify(a, p, binding)
                if bound is None:
                    continue
                bound = _unify(b, q, bound)
                if bound is None:
                    continue
                yield used | {dev.id}, bound, {base: dev}
    elif isinstance(e, And):
        mid = _Var()
        left_size = literal_count(e.left)
        for used1, bound1, map1 in _match_branch(network, e.left, a, mid, base, used, binding):
            for used2, bound2, map2 in _match_branch(network, e.right, mid, b, base + left_size, used1, bound1):
                yield used2, bound2, {**map1, **map2}
    elif isinstance(e, Or):
        left_size = literal_count(e.left)
        for used1, bound1, map1 in _match_branch(network, e.left, a, b, base, used, binding):
            for used2, bound2, map2 in _match_branch(network, e.right, a, b, base + left_size, used1, bound1):
                yield used2, bound2, {**map1, **map2}
    else:
        raise TypeError(f"not an expression node: {e!r}")


def _match_genuine(network: SwitchNetwork, f: BoolExpr) -> tuple[dict[int, Device], dict[int, Device]]:
    for used_t, bound, true_map in _match_branch(network, f, "X", "Z", 0, frozenset(), {}):
        for used_f, _, false_map in _match_branch(network, complement(f), "Y", "Z", 0, used_t, bound):
            if len(used_f) == len(network.devices):
                return true_map, false_map
    raise TransformError(
        f"network is not the genuine series-parallel realization of {format_expression(f)!r}"
    )
