"""Command-line front end.

One verb per pipeline stage: ``synth`` an expression into a network,
``transform`` an existing genuine netlist, ``verify`` the differential
contract, ``analyze`` power/depth/early-propagation behavior, and
``emit-spice`` a subcircuit.  Exit codes: 0 success (all checks pass),
1 verification failure (violations found), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analyzer import (
    AnalysisReport,
    EnergyReport,
    Violation,
    check_early_propagation,
    check_fully_connected,
    check_function,
    depth_by_assignment,
    energy_report,
    full_report,
)
from .boolexpr import BoolExpr, parse_expression
from .enhancer import insert_pass_gates
from .fcsynth import fc_from_expr, fc_transform
from .netlist import emit_json, emit_spice, parse_json
from .switchnet import SwitchNetwork, build_genuine
from . import report as report_files

_STYLES = ("genuine", "fc", "enhanced")
_REPORTS = ("energy", "depth", "earlyprop", "all")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpdn", description=__doc__)
    parser.add_argument("--version", action="version", version=f"dpdn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize a network from a Boolean expression")
    synth.add_argument("--expr", required=True, help="expression, e.g. '(A | B) & C'")
    synth.add_argument("--style", choices=_STYLES, default="fc")
    synth.add_argument("--name", default=None, help="network name (defaults to the style)")
    synth.add_argument("-o", "--output", default=None, help="netlist JSON path (default: stdout)")

    transform = sub.add_parser("transform", help="rewrite a genuine netlist into a fully connected one")
    transform.add_argument("netlist", help="genuine network JSON")
    transform.add_argument("--function", required=True, help="the Boolean function the network realizes")
    transform.add_argument("-o", "--output", default=None)

    verify = sub.add_parser("verify", help="check function, exclusivity and full connection")
    verify.add_argument("netlist")
    verify.add_argument("--function", required=True)
    verify.add_argument("--json", action="store_true", dest="as_json")

    analyze = sub.add_parser("analyze", help="report energy, depth or early propagation")
    analyze.add_argument("netlist")
    analyze.add_argument("--report", choices=_REPORTS, default="all")
    analyze.add_argument("--function", default=None, help="required for --report all")
    analyze.add_argument("--json", action="store_true", dest="as_json")
    analyze.add_argument("--outdir", default=None, help="also write CSV tables and figures here")

    spice = sub.add_parser("emit-spice", help="emit the network as a SPICE subcircuit")
    spice.add_argument("netlist")
    spice.add_argument("-o", "--output", default=None)

    return parser


def _load_network(path: str) -> SwitchNetwork:
    return parse_json(Path(path).read_bytes())


def _parse_function(text: str) -> BoolExpr:
    return parse_expression(text)


def _write_output(data: bytes | str, output: str | None) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(output).write_bytes(data)


def _format_assignment(assignment: tuple[tuple[str, object], ...]) -> str:
    return ",".join(f"{name}={value}" for name, value in assignment)


def _print_violations(violations) -> None:
    for violation in violations:
        print(f"  {violation.kind} at {_format_assignment(violation.assignment)}: {violation.witness}")


def _violation_dict(violation: Violation) -> dict:
    return {
        "kind": violation.kind,
        "assignment": violation.assignment_dict(),
        "witness": violation.witness if isinstance(violation.witness, (str, int)) else list(violation.witness),
    }


def _energy_dict(report: EnergyReport) -> dict:
    return {
        "assignments": [
            {"inputs": dict(zip(report.inputs, bits)), "energy": energy}
            for bits, energy in sorted(report.per_assignment.items())
        ],
        "mean": report.mean,
        "variance": report.variance,
        "min": report.min_energy,
        "max": report.max_energy,
    }


def _depth_dict(inputs, depths) -> list[dict]:
    return [
        {"inputs": dict(zip(inputs, bits)), "depth": depth}
        for bits, depth in sorted(depths.items())
    ]


def _print_table(inputs, table, column: str) -> None:
    header = " ".join(inputs)
    print(f"  {header} | {column}")
    for bits, value in sorted(table.items()):
        row = " ".join(str(b) for b in bits)
        print(f"  {row} | {value}")


def _cmd_synth(args) -> int:
    f = _parse_function(args.expr)
    name = args.name if args.name is not None else args.style
    if args.style == "genuine":
        network = build_genuine(f, name=name)
    elif args.style == "fc":
        network = fc_from_expr(f, name=name)
    else:
        network = insert_pass_gates(fc_from_expr(f, name=name))
    _write_output(emit_json(network), args.output)
    return 0


def _cmd_transform(args) -> int:
    network = _load_network(args.netlist)
    f = _parse_function(args.function)
    _write_output(emit_json(fc_transform(network, f)), args.output)
    return 0


def _cmd_verify(args) -> int:
    network = _load_network(args.netlist)
    f = _parse_function(args.function)
    function_violations = check_function(network, f)
    connectivity_violations = check_fully_connected(network)
    ok = not function_violations and not connectivity_violations
    if args.as_json:
        payload = {
            "network": network.name,
            "function": {"pass": not function_violations, "violations": [_violation_dict(v) for v in function_violations]},
            "fully_connected": {"pass": not connectivity_violations, "violations": [_violation_dict(v) for v in connectivity_violations]},
            "pass": ok,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"function: {'PASS' if not function_violations else 'FAIL'}")
        _print_violations(function_violations)
        print(f"fully_connected: {'PASS' if not connectivity_violations else 'FAIL'}")
        _print_violations(connectivity_violations)
        print(f"verdict: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _analysis_payload(args, network: SwitchNetwork) -> tuple[dict, int, dict]:
    """Run the requested reports; returns (json payload, exit code,
    file-rendering inputs keyed by report name)."""
    payload: dict = {"network": network.name}
    renders: dict = {}
    failed = False
    if args.report in ("energy", "all"):
        energy = energy_report(network)
        payload["energy"] = _energy_dict(energy)
        renders["energy"] = energy
    if args.report in ("depth", "all"):
        depths = depth_by_assignment(network)
        payload["depth"] = _depth_dict(network.inputs, depths)
        renders["depth"] = depths
    if args.report in ("earlyprop", "all"):
        violations = check_early_propagation(network)
        payload["early_propagation"] = {
            "pass": not violations,
            "violations": [_violation_dict(v) for v in violations],
        }
        renders["earlyprop"] = violations
        failed = failed or bool(violations)
    if args.report == "all":
        f = _parse_function(args.function)
        report = full_report(network, f)
        payload["verdicts"] = report.verdicts
        payload["function"] = {
            "pass": report.verdicts["function"],
            "violations": [_violation_dict(v) for v in report.function_violations],
        }
        payload["fully_connected"] = {
            "pass": report.verdicts["fully_connected"],
            "violations": [_violation_dict(v) for v in report.connectivity_violations],
        }
        payload["device_count"] = report.device_count
        payload["internal_count"] = report.internal_count
        payload["pass_gate_count"] = report.pass_gate_count
        failed = failed or not all(report.verdicts.values())
    return payload, (1 if failed else 0), renders


def _render_analysis_files(network: SwitchNetwork, renders: dict, outdir: str) -> None:
    directory = Path(outdir)
    directory.mkdir(parents=True, exist_ok=True)
    if "energy" in renders:
        report_files.write_energy_csv(renders["energy"], directory / "energy.csv")
        report_files.render_energy_figure(renders["energy"], directory / "energy.png", network.name)
    if "depth" in renders:
        report_files.write_depth_csv(network.inputs, renders["depth"], directory / "depth.csv")
        report_files.render_depth_figure(network.inputs, renders["depth"], directory / "depth.png", network.name)
    if "earlyprop" in renders:
        report_files.write_violations_csv(network.inputs, renders["earlyprop"], directory / "early_propagation.csv")


def _cmd_analyze(args) -> int:
    if args.report == "all" and args.function is None:
        raise _UsageError("--report all requires --function")
    network = _load_network(args.netlist)
    payload, code, renders = _analysis_payload(args, network)
    if args.as_json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(f"network: {network.name} ({len(network.devices)} devices, {network.internal_count} internal nodes)")
        if "energy" in renders:
            energy = renders["energy"]
            print("energy per assignment:")
            _print_table(network.inputs, energy.per_assignment, "energy")
            print(f"  mean {energy.mean:g}  variance {energy.variance:g}  min {energy.min_energy}  max {energy.max_energy}")
        if "depth" in renders:
            print("evaluation depth per assignment:")
            _print_table(network.inputs, renders["depth"], "depth")
        if "earlyprop" in renders:
            violations = renders["earlyprop"]
            print(f"early_propagation: {'PASS' if not violations else f'FAIL ({len(violations)} violations)'}")
            _print_violations(violations)
        if "verdicts" in payload:
            for key, value in sorted(payload["verdicts"].items()):
                print(f"{key}: {'PASS' if value else 'FAIL'}")
    if args.outdir is not None:
        _render_analysis_files(network, renders, args.outdir)
    return code


def _cmd_emit_spice(args) -> int:
    network = _load_network(args.netlist)
    _write_output(emit_spice(network), args.output)
    return 0


class _UsageError(ValueError):
    pass


_COMMANDS = {
    "synth": _cmd_synth,
    "transform": _cmd_transform,
    "verify": _cmd_verify,
    "analyze": _cmd_analyze,
    "emit-spice": _cmd_emit_spice,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"dpdn: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
