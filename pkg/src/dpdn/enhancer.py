"""Pass-gate insertion for input-independent evaluation depth.

A pass-gate is a parallel pair of switches driven by both rails of one
input: it conducts under every complementary assignment and blocks
while that input pair is still in the 0-0 precharge state.  Splicing
pass-gates into the structural discharge paths of a fully connected
network equalizes the series device count of every path and makes each
path depend on every input, which removes early propagation: no
conducting path to ground can form before all input pairs have left
precharge.

Insertion works on the series-parallel derivation.  For each series
composition ``x`` over ``y``, the paths realizing ``!y`` alone are the
only ones that miss the inputs of ``x`` and the length contributed by
it; they receive a chain of pass-gates — one per missing input in the
network's input order, padded with the lexicographically smallest
input when lengths still differ (repeated literals make coverage
shorter than length).  Chains land at the ground end of the owning
literal's device, each path family getting its own chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator

from .boolexpr import Literal
from .switchnet import (
    Device,
    ORIGIN_PASS_GATE,
    SwitchNetwork,
    internal_node,
    validate_network,
)
from .fcsynth import SpFlip, SpLit, SpNode, SpSeries

__all__ = [
    "DischargePath",
    "MissingDerivationError",
    "enumerate_paths",
    "insert_pass_gates",
]


class MissingDerivationError(ValueError):
    """The network carries no series-parallel derivation."""


@dataclass(frozen=True)
class DischargePath:
    """One structural root-to-ground path.

    ``nodes`` runs from X or Y down to Z; ``devices`` lists one device
    id per series step (the positive-rail device for a pass-gate pair);
    ``inputs_covered`` are the inputs gating at least one step.
    """

    nodes: tuple[str, ...]
    devices: tuple[str, ...]
    inputs_covered: frozenset[str]

    @property
    def depth(self) -> int:
        return len(self.devices)


def _require_derivation(network: SwitchNetwork) -> SpNode:
    if network.derivation is None:
        raise MissingDerivationError(
            f"network {network.name!r} has no series-parallel derivation attached"
        )
    return network.derivation


def _collect_hop_paths(node: SpNode) -> tuple[list[list[tuple[str, ...]]], list[list[tuple[str, ...]]]]:
    """Hop sequences of the true-side and false-side path families."""
    if isinstance(node, SpLit):
        true = [[(node.true_device,)] + list(node.true_tail)]
        false = [[(node.false_device,)] + list(node.false_tail)]
        return true, false
    if isinstance(node, SpSeries):
        top_t, top_f = _collect_hop_paths(node.top)
        bot_t, bot_f = _collect_hop_paths(node.bottom)
        true = [p + q for p in top_t for q in bot_t]
        false = [p + q for p in top_f for q in bot_t] + bot_f
        return true, false
    if isinstance(node, SpFlip):
        true, false = _collect_hop_paths(node.inner)
        return false, true
    raise TypeError(f"not a derivation node: {node!r}")


def enumerate_paths(network: SwitchNetwork) -> list[DischargePath]:
    """Structural root-to-ground paths of the network's derivation.

    These are the paths of the series-parallel build tree, not
    arbitrary graph walks; a parallel pass-gate pair counts as a single
    step.  True-side paths (from X) come first, then false-side paths
    (from Y), in recursion order.  With repeated literals a structural
    path may demand both rails of one input and thus never conduct;
    such paths still take part in depth equalization.
    """
    root = _require_derivation(network)
    by_id = network.device_map()
    true_paths, false_paths = _collect_hop_paths(root)

    def materialize(hops: list[tuple[str, ...]], start: str) -> DischargePath:
        nodes = [start]
        reps = []
        covered = set()
        current = start
        for hop in hops:
            endpoints = {by_id[hop[0]].a, by_id[hop[0]].b}
            for dev_id in hop:
                dev = by_id[dev_id]
                if {dev.a, dev.b} != endpoints:
                    raise MissingDerivationError(f"derivation hop {hop} is not a parallel group")
                covered.add(dev.gate.input)
            if current not in endpoints:
                raise MissingDerivationError(f"derivation path broken at node {current}")
            current = (endpoints - {current}).pop()
            nodes.append(current)
            reps.append(hop[0])
        return DischargePath(tuple(nodes), tuple(reps), frozenset(covered))

    paths = [materialize(hops, "X") for hops in true_paths]
    paths += [materialize(hops, "Y") for hops in false_paths]
    return paths


def _subtree_inputs(node: SpNode, by_id: dict[str, Device], cache: dict[int, frozenset[str]]) -> frozenset[str]:
    key = id(node)
    if key not in cache:
        if isinstance(node, SpLit):
            cache[key] = frozenset({by_id[node.true_device].gate.input})
        elif isinstance(node, SpSeries):
            cache[key] = _subtree_inputs(node.top, by_id, cache) | _subtree_inputs(node.bottom, by_id, cache)
        else:
            cache[key] = _subtree_inputs(node.inner, by_id, cache)
    return cache[key]


def insert_pass_gates(network: SwitchNetwork, name: str | None = None) -> SwitchNetwork:
    """Return the enhanced network with equalized structural paths.

    Every structural path of the result covers every network input and
    all paths have the same device count.  Original devices keep their
    ids, gates and origins (some are re-endpointed to splice chains
    in); added devices all have origin ``pass_gate`` and come in
    parallel pairs, positive rail first.
    """
    root = _require_derivation(network).map_ids({})  # private copy, mutated below
    order: list[str] = [d.id for d in network.devices]
    devices: dict[str, Device] = {d.id: d for d in network.devices}
    next_node = [network.internal_count]
    next_dev = [0]
    pad_input = min(network.inputs)
    input_cache: dict[int, frozenset[str]] = {}

    def alloc_node() -> str:
        node = internal_node(next_node[0])
        next_node[0] += 1
        return node

    def fresh_id() -> str:
        while f"M{next_dev[0]}" in devices:
            next_dev[0] += 1
        dev_id = f"M{next_dev[0]}"
        next_dev[0] += 1
        return dev_id

    def walk(lit: SpLit, true_side: bool, start: str) -> tuple[list[tuple[str, ...]], str]:
        """Hop chain of one side of a literal, and its ground-end node."""
        base = lit.true_device if true_side else lit.false_device
        tail = lit.true_tail if true_side else lit.false_tail
        hops = [(base,)] + list(tail)
        current = start
        for hop in hops:
            dev = devices[hop[0]]
            current = dev.b if dev.a == current else dev.a
        return hops, current

    def side_end(node: SpNode, true_side: bool, start: str) -> str:
        if isinstance(node, SpLit):
            return walk(node, true_side, start)[1]
        if isinstance(node, SpSeries):
            if true_side:
                mid = side_end(node.top, True, start)
                return side_end(node.bottom, True, mid)
            # false paths of a series all end where the lower true side ends,
            # so following the !y family is enough
            return side_end(node.bottom, False, start)
        return side_end(node.inner, not true_side, start)

    def splice(lit: SpLit, true_side: bool, start: str, input_name: str) -> None:
        hops, ground = walk(lit, true_side, start)
        joint = alloc_node()
        for dev_id in hops[-1]:
            dev = devices[dev_id]
            devices[dev_id] = replace(dev, a=joint if dev.a == ground else dev.a, b=joint if dev.b == ground else dev.b)
        pos, neg = fresh_id(), fresh_id()
        devices[pos] = Device(pos, joint, ground, Literal(input_name), ORIGIN_PASS_GATE)
        devices[neg] = Device(neg, joint, ground, Literal(input_name, True), ORIGIN_PASS_GATE)
        order.extend((pos, neg))
        tail = lit.true_tail if true_side else lit.false_tail
        tail.append((pos, neg))

    def insert_below(node: SpNode, true_side: bool, chain: list[str], top: str, false_top: str) -> None:
        if isinstance(node, SpLit):
            start = top if true_side else false_top
            for input_name in chain:
                splice(node, true_side, start, input_name)
        elif isinstance(node, SpSeries):
            if true_side:
                insert_below(node.top, True, chain, top, false_top)
            else:
                mid = side_end(node.top, True, top)
                insert_below(node.top, False, chain, top, false_top)
                insert_below(node.bottom, False, chain, mid, false_top)
        elif isinstance(node, SpFlip):
            insert_below(node.inner, not true_side, chain, false_top, top)
        else:
            raise TypeError(f"not a derivation node: {node!r}")

    def enhance(node: SpNode, top: str, false_top: str) -> tuple[int, str]:
        if isinstance(node, SpLit):
            return 1, walk(node, True, top)[1]
        if isinstance(node, SpSeries):
            upper_len, mid = enhance(node.top, top, false_top)
            lower_len, ground = enhance(node.bottom, mid, false_top)
            upper_inputs = _subtree_inputs(node.top, devices, input_cache)
            lower_inputs = _subtree_inputs(node.bottom, devices, input_cache)
            chain = [i for i in network.inputs if i in upper_inputs and i not in lower_inputs]
            while len(chain) < upper_len:
                chain.append(pad_input)
            insert_below(node.bottom, False, chain, mid, false_top)
            return upper_len + lower_len, ground
        if isinstance(node, SpFlip):
            return enhance(node.inner, false_top, top)
        raise TypeError(f"not a derivation node: {node!r}")

    enhance(root, "X", "Y")

    result = SwitchNetwork(
        name if name is not None else network.name,
        network.inputs,
        next_node[0],
        tuple(devices[dev_id] for dev_id in order),
        derivation=root,
    )
    validate_network(result)
    return result
