"""Shared test utilities: independent oracles and expression corpora.

The oracles here deliberately avoid the library's own machinery:
connectivity is plain BFS over adjacency lists (the library uses
union-find), and structural path enumeration is a DFS over the
collapsed multigraph with a per-input polarity consistency check (the
library walks its series-parallel derivation).
"""

from __future__ import annotations

import itertools
import random

from dpdn.boolexpr import And, BoolExpr, Lit, Literal, Or
from dpdn.switchnet import PRECHARGE, SwitchNetwork, closed_edges

NAMED_CORPUS = [
    "A & B",
    "A | B",
    "(A | B) & (C | D)",
    "A & B & C",
    "A & (B | C)",
    "A & B | B & C | C & A",
]

RANDOM_CORPUS_SEED = 20260810
RANDOM_CORPUS_SIZE = 200

INPUT_POOL = ("A", "B", "C", "D", "E")


def random_nnf(rng: random.Random, max_inputs: int = 5, max_literals: int = 8) -> BoolExpr:
    names = list(INPUT_POOL[: rng.randint(1, max_inputs)])
    literals = rng.randint(1, max_literals)

    def build(count: int) -> BoolExpr:
        if count == 1:
            return Lit(Literal(rng.choice(names), rng.random() < 0.5))
        split = rng.randint(1, count - 1)
        op = rng.choice((And, Or))
        return op(build(split), build(count - split))

    return build(literals)


def random_corpus(size: int = RANDOM_CORPUS_SIZE, seed: int = RANDOM_CORPUS_SEED) -> list[BoolExpr]:
    rng = random.Random(seed)
    return [random_nnf(rng) for _ in range(size)]


def all_assignments(inputs) -> list[dict[str, int]]:
    return [dict(zip(inputs, bits)) for bits in itertools.product((0, 1), repeat=len(inputs))]


def reach_oracle(network: SwitchNetwork, assignment, *, bridge: bool = False) -> dict[str, set[str]]:
    """node -> connected node set, by BFS over closed devices."""
    by_id = network.device_map()
    adjacency: dict[str, set[str]] = {node: set() for node in network.nodes()}
    for dev_id in closed_edges(network, assignment):
        dev = by_id[dev_id]
        adjacency[dev.a].add(dev.b)
        adjacency[dev.b].add(dev.a)
    if bridge:
        adjacency["X"].add("Y")
        adjacency["Y"].add("X")
    component: dict[str, set[str]] = {}
    for start in adjacency:
        if start in component:
            continue
        seen = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for other in adjacency[node]:
                if other not in seen:
                    seen.add(other)
                    frontier.append(other)
        for node in seen:
            component[node] = seen
    return component


def connected_oracle(network: SwitchNetwork, assignment, u: str, v: str, *, bridge: bool = False) -> bool:
    return v in reach_oracle(network, assignment, bridge=bridge)[u]


def discharge_oracle(network: SwitchNetwork, assignment) -> frozenset[str]:
    return frozenset(reach_oracle(network, assignment, bridge=True)["Z"])


def path_satisfiable(network: SwitchNetwork, path_nodes) -> bool:
    """Whether some complementary assignment closes every hop of the path."""
    by_pair: dict[frozenset, list] = {}
    for dev in network.devices:
        by_pair.setdefault(frozenset((dev.a, dev.b)), []).append(dev.gate)
    forced: dict[str, bool] = {}
    for u, v in zip(path_nodes, path_nodes[1:]):
        gates = by_pair[frozenset((u, v))]
        if len({gate.negated for gate in gates}) == 2:
            continue
        gate = gates[0]
        want = not gate.negated
        if forced.setdefault(gate.input, want) != want:
            return False
    return True


def structural_path_oracle(network: SwitchNetwork) -> set[tuple[tuple[str, ...], int, frozenset[str]]]:
    """All simple X/Y-to-Z paths that some complementary input conducts.

    Parallel devices between the same node pair collapse into one hop
    (a pass-gate hop constrains nothing; a single-polarity hop forces
    its input's value).  Paths may not pass through X, Y or Z
    internally.  Returns (node sequence, hop count, inputs covered).
    """
    hops: dict[tuple[str, str], list] = {}
    for dev in network.devices:
        key = tuple(sorted((dev.a, dev.b)))
        hops.setdefault(key, []).append(dev.gate)
    adjacency: dict[str, set[str]] = {node: set() for node in network.nodes()}
    for a, b in hops:
        adjacency[a].add(b)
        adjacency[b].add(a)

    def consistent(path_nodes: list[str]) -> frozenset[str] | None:
        forced: dict[str, bool] = {}
        covered = set()
        for u, v in zip(path_nodes, path_nodes[1:]):
            gates = hops[tuple(sorted((u, v)))]
            polarities = {gate.negated for gate in gates}
            for gate in gates:
                covered.add(gate.input)
            if len(polarities) == 2:
                continue  # pass-gate style hop: conducts under any complementary input
            gate = gates[0]
            want = not gate.negated
            if forced.setdefault(gate.input, want) != want:
                return None
        return frozenset(covered)

    found = set()
    for start in ("X", "Y"):
        stack = [[start]]
        while stack:
            path = stack.pop()
            node = path[-1]
            if node == "Z":
                covered = consistent(path)
                if covered is not None:
                    found.add((tuple(path), len(path) - 1, covered))
                continue
            for nxt in adjacency[node]:
                if nxt in path or (nxt in ("X", "Y") and nxt != start):
                    continue
                stack.append(path + [nxt])
    return found
