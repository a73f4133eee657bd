"""Exhaustive switch-level verification and the abstract power model.

All checks sweep complementary assignments (2^n of them) or partial
assignments with at least one precharged input (3^n - 2^n).  The cycle
model is history-free: every node discharged during evaluation is
recharged in the following precharge, so the energy of a cycle is just
the number of nodes in the discharge set under unit capacitance per
node.  Power leaks exactly when discharge sets differ across inputs,
which the energy report surfaces as a nonzero variance.

During evaluation the host gate keeps X and Y connected (both outputs
eventually discharge), so discharge sets are computed with a permanent
X-Y bridge; connectivity checks and depth are bridge-free.
"""

from __future__ import annotations

import itertools
import os
import warnings
from dataclasses import dataclass
from statistics import fmean, pvariance
from typing import Iterator, Mapping

from .boolexpr import BoolExpr, eval_truth, input_set
from .switchnet import (
    PRECHARGE,
    ORIGIN_PASS_GATE,
    SwitchNetwork,
    _UnionFind,
    closed_edges,
    validate_network,
)

__all__ = [
    "Violation",
    "EnergyReport",
    "AnalysisReport",
    "EnumerationLimitError",
    "check_function",
    "check_fully_connected",
    "discharge_set",
    "energy_report",
    "evaluation_depth",
    "depth_by_assignment",
    "check_depth_uniform",
    "check_early_propagation",
    "full_report",
]

# Sweep sizes grow as 2^n (complementary) and 3^n (partial); refuse to
# enumerate past the hard caps, warn when a sweep is merely large.  The
# DPDN_MAX_INPUTS environment variable overrides both hard caps.
HARD_SWEEP_CAP = 24
WARN_SWEEP_INPUTS = 16
HARD_PARTIAL_CAP = 12
WARN_PARTIAL_INPUTS = 8

ENV_CAP_NAME = "DPDN_MAX_INPUTS"


class EnumerationLimitError(ValueError):
    pass


def _env_cap(default: int) -> int:
    raw = os.environ.get(ENV_CAP_NAME)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_CAP_NAME} must be an integer, got {raw!r}") from None


def _check_sweep(n_inputs: int) -> None:
    cap = _env_cap(HARD_SWEEP_CAP)
    if n_inputs > cap:
        raise EnumerationLimitError(f"{n_inputs} inputs exceed the 2^n sweep cap of {cap}")
    if n_inputs > WARN_SWEEP_INPUTS:
        warnings.warn(f"sweeping 2^{n_inputs} assignments; this may be slow", RuntimeWarning, stacklevel=3)


def _check_partial_sweep(n_inputs: int) -> None:
    cap = _env_cap(HARD_PARTIAL_CAP)
    if n_inputs > cap:
        raise EnumerationLimitError(f"{n_inputs} inputs exceed the 3^n partial sweep cap of {cap}")
    if n_inputs > WARN_PARTIAL_INPUTS:
        warnings.warn(f"sweeping 3^{n_inputs} partial assignments; this may be slow", RuntimeWarning, stacklevel=3)


@dataclass(frozen=True)
class Violation:
    """One failed check at one assignment.

    ``assignment`` is a (name, value) tuple in network input order;
    values are 0, 1 or ``"precharge"``.  The witness depends on kind:
    the floating node name, (node, expected, actual) for a wrong
    function value, (x_connected, y_connected) for broken exclusivity,
    the conducting node path for early propagation, and
    (depth, expected_depth) for unequal depth.
    """

    kind: str
    assignment: tuple[tuple[str, object], ...]
    witness: object

    def assignment_dict(self) -> dict[str, object]:
        return dict(self.assignment)


def _violation_sort_key(v: Violation) -> tuple:
    return (tuple(str(value) for _, value in v.assignment), v.kind, repr(v.witness))


@dataclass(frozen=True)
class EnergyReport:
    """Unit-capacitance energy of every evaluation cycle.

    Keys of ``per_assignment`` are input-bit tuples in ``inputs``
    order; the value counts the nodes discharged that cycle.
    """

    inputs: tuple[str, ...]
    per_assignment: dict[tuple[int, ...], int]
    mean: float
    variance: float
    min_energy: int
    max_energy: int


def complementary_assignments(inputs: tuple[str, ...]) -> Iterator[tuple[tuple[int, ...], dict[str, int]]]:
    for bits in itertools.product((0, 1), repeat=len(inputs)):
        yield bits, dict(zip(inputs, bits))


def partial_assignments(inputs: tuple[str, ...]) -> Iterator[tuple[tuple[object, ...], dict[str, object]]]:
    """All 3^n - 2^n partial assignments with >= 1 precharged input."""
    for values in itertools.product((0, 1, PRECHARGE), repeat=len(inputs)):
        if PRECHARGE in values:
            yield values, dict(zip(inputs, values))


def _component_lookup(network: SwitchNetwork, assignment: Mapping[str, object], *, bridge: bool) -> _UnionFind:
    uf = _UnionFind(network.nodes())
    by_id = network.device_map()
    for dev_id in closed_edges(network, assignment):
        dev = by_id[dev_id]
        uf.union(dev.a, dev.b)
    if bridge:
        uf.union("X", "Y")
    return uf


def _as_pairs(inputs: tuple[str, ...], values) -> tuple[tuple[str, object], ...]:
    return tuple(zip(inputs, values))


def check_function(network: SwitchNetwork, f: BoolExpr) -> list[Violation]:
    """Verify that the network realizes (f, !f) differentially.

    For every complementary assignment X must reach Z exactly when ``f``
    is true, Y exactly when it is false, and exactly one of the two may
    conduct.  An empty list is a pass.
    """
    if set(network.inputs) != set(input_set(f)):
        raise ValueError(
            f"network inputs {sorted(network.inputs)} do not match expression inputs {sorted(input_set(f))}"
        )
    _check_sweep(len(network.inputs))
    violations = []
    for bits, assignment in complementary_assignments(network.inputs):
        uf = _component_lookup(network, assignment, bridge=False)
        ground = uf.find("Z")
        x_conn = uf.find("X") == ground
        y_conn = uf.find("Y") == ground
        expected = eval_truth(f, assignment)
        pairs = _as_pairs(network.inputs, bits)
        if x_conn != expected:
            violations.append(Violation("wrong_function", pairs, ("X", expected, x_conn)))
        if y_conn != (not expected):
            violations.append(Violation("wrong_function", pairs, ("Y", not expected, y_conn)))
        if x_conn == y_conn:
            violations.append(Violation("not_exclusive", pairs, (x_conn, y_conn)))
    violations.sort(key=_violation_sort_key)
    return violations


def check_fully_connected(network: SwitchNetwork) -> list[Violation]:
    """Find internal nodes left floating under some complementary input.

    A floating node keeps its charge across the cycle boundary, making
    the next cycle's consumption depend on input history (the memory
    effect); full connection to X, Y or Z rules that out.
    """
    _check_sweep(len(network.inputs))
    violations = []
    internals = [node for node in network.nodes() if node not in ("X", "Y", "Z")]
    for bits, assignment in complementary_assignments(network.inputs):
        if not internals:
            break
        uf = _component_lookup(network, assignment, bridge=False)
        external_roots = {uf.find("X"), uf.find("Y"), uf.find("Z")}
        pairs = _as_pairs(network.inputs, bits)
        for node in internals:
            if uf.find(node) not in external_roots:
                violations.append(Violation("floating_node", pairs, node))
    violations.sort(key=_violation_sort_key)
    return violations


def discharge_set(network: SwitchNetwork, assignment: Mapping[str, object]) -> frozenset[str]:
    """Nodes discharged this cycle: the component of Z over closed
    switches, with the host gate's permanent X-Y bridge included."""
    uf = _component_lookup(network, assignment, bridge=True)
    ground = uf.find("Z")
    return frozenset(node for node in network.nodes() if uf.find(node) == ground)


def energy_report(network: SwitchNetwork) -> EnergyReport:
    """Per-assignment discharge-set sizes with their spread.

    Constant-power operation shows up as ``variance == 0``.
    """
    _check_sweep(len(network.inputs))
    per = {}
    for bits, assignment in complementary_assignments(network.inputs):
        per[bits] = len(discharge_set(network, assignment))
    energies = list(per.values())
    return EnergyReport(
        inputs=network.inputs,
        per_assignment=per,
        mean=fmean(energies),
        variance=pvariance(energies),
        min_energy=min(energies),
        max_energy=max(energies),
    )


def evaluation_depth(network: SwitchNetwork, assignment: Mapping[str, object]) -> int:
    """Series device count from Z to the conducting output.

    Computed as the shortest closed-switch path (bridge-free) from Z to
    whichever of X or Y lies in Z's component; a parallel pass-gate
    pair therefore counts once.
    """
    closed = closed_edges(network, assignment)
    by_id = network.device_map()
    adjacency: dict[str, list[str]] = {node: [] for node in network.nodes()}
    for dev_id in closed:
        dev = by_id[dev_id]
        adjacency[dev.a].append(dev.b)
        adjacency[dev.b].append(dev.a)
    distance = {"Z": 0}
    queue = ["Z"]
    while queue:
        current = queue.pop(0)
        for neighbor in adjacency[current]:
            if neighbor not in distance:
                distance[neighbor] = distance[current] + 1
                queue.append(neighbor)
    reached = [node for node in ("X", "Y") if node in distance]
    if not reached:
        raise ValueError("neither output reaches ground; not a valid differential network under this input")
    return min(distance[node] for node in reached)


def depth_by_assignment(network: SwitchNetwork) -> dict[tuple[int, ...], int]:
    _check_sweep(len(network.inputs))
    return {
        bits: evaluation_depth(network, assignment)
        for bits, assignment in complementary_assignments(network.inputs)
    }


def check_depth_uniform(network: SwitchNetwork) -> list[Violation]:
    """Report assignments whose evaluation depth exceeds the minimum."""
    depths = depth_by_assignment(network)
    expected = min(depths.values())
    violations = [
        Violation("unequal_depth", _as_pairs(network.inputs, bits), (depth, expected))
        for bits, depth in depths.items()
        if depth != expected
    ]
    violations.sort(key=_violation_sort_key)
    return violations


def check_early_propagation(network: SwitchNetwork) -> list[Violation]:
    """Detect evaluation starting before all inputs are complementary.

    For every partial assignment with at least one precharged input,
    reports a violation whenever X or Y already conducts to Z; the
    witness is the shortest conducting node path.
    """
    _check_partial_sweep(len(network.inputs))
    violations = []
    by_id = network.device_map()
    for values, assignment in partial_assignments(network.inputs):
        closed = closed_edges(network, assignment)
        if not closed:
            continue
        adjacency: dict[str, list[str]] = {node: [] for node in network.nodes()}
        for dev_id in closed:
            dev = by_id[dev_id]
            adjacency[dev.a].append(dev.b)
            adjacency[dev.b].append(dev.a)
        parent: dict[str, str | None] = {"Z": None}
        queue = ["Z"]
        hit = None
        while queue and hit is None:
            current = queue.pop(0)
            for neighbor in adjacency[current]:
                if neighbor not in parent:
                    parent[neighbor] = current
                    if neighbor in ("X", "Y"):
                        hit = neighbor
                        break
                    queue.append(neighbor)
        if hit is not None:
            path = []
            node: str | None = hit
            while node is not None:
                path.append(node)
                node = parent[node]
            violations.append(Violation("early_propagation", _as_pairs(network.inputs, values), tuple(path)))
    violations.sort(key=_violation_sort_key)
    return violations


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the checks produce for one network, plus verdicts."""

    name: str
    inputs: tuple[str, ...]
    device_count: int
    internal_count: int
    pass_gate_count: int
    function_violations: tuple[Violation, ...]
    connectivity_violations: tuple[Violation, ...]
    early_propagation_violations: tuple[Violation, ...]
    depth_violations: tuple[Violation, ...]
    energy: EnergyReport
    depths: dict[tuple[int, ...], int]
    verdicts: dict[str, bool]

    @property
    def all_violations(self) -> tuple[Violation, ...]:
        return (
            self.function_violations
            + self.connectivity_violations
            + self.early_propagation_violations
            + self.depth_violations
        )


def full_report(network: SwitchNetwork, f: BoolExpr) -> AnalysisReport:
    """Run every check and bundle the results with per-property verdicts."""
    validate_network(network)
    function_violations = tuple(check_function(network, f))
    connectivity_violations = tuple(check_fully_connected(network))
    early = tuple(check_early_propagation(network))
    depth_violations = tuple(check_depth_uniform(network))
    energy = energy_report(network)
    depths = depth_by_assignment(network)
    verdicts = {
        "function": not function_violations,
        "fully_connected": not connectivity_violations,
        "early_propagation": not early,
        "constant_energy": energy.variance == 0,
        "constant_depth": not depth_violations,
    }
    return AnalysisReport(
        name=network.name,
        inputs=network.inputs,
        device_count=len(network.devices),
        internal_count=network.internal_count,
        pass_gate_count=sum(1 for d in network.devices if d.origin == ORIGIN_PASS_GATE),
        function_violations=function_violations,
        connectivity_violations=connectivity_violations,
        early_propagation_violations=early,
        depth_violations=depth_violations,
        energy=energy,
        depths=depths,
        verdicts=verdicts,
    )
