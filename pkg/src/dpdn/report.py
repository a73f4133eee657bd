"""File renderings of analysis results: delimited tables and figures.

The CLI's analyze command can mirror its stdout report into a
directory: one CSV per report plus a matplotlib bar chart for the
per-assignment energy and depth profiles.  A constant-power network
shows up as a flat energy profile.  Output is deterministic — no
timestamps, fixed ordering — so reruns are byte-identical.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .analyzer import EnergyReport, Violation

__all__ = [
    "write_energy_csv",
    "write_depth_csv",
    "write_violations_csv",
    "render_energy_figure",
    "render_depth_figure",
]

_FIGSIZE = (6.4, 3.6)
_DPI = 120


def _bit_rows(inputs: tuple[str, ...], table: dict[tuple[int, ...], int]) -> list[tuple[tuple[int, ...], int]]:
    return sorted(table.items())


def write_energy_csv(report: EnergyReport, path: Path | str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(list(report.inputs) + ["energy"])
        for bits, energy in _bit_rows(report.inputs, report.per_assignment):
            writer.writerow(list(bits) + [energy])


def write_depth_csv(inputs: tuple[str, ...], depths: dict[tuple[int, ...], int], path: Path | str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(list(inputs) + ["depth"])
        for bits, depth in _bit_rows(inputs, depths):
            writer.writerow(list(bits) + [depth])


def write_violations_csv(inputs: tuple[str, ...], violations: list[Violation] | tuple[Violation, ...], path: Path | str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(list(inputs) + ["kind", "witness"])
        for violation in violations:
            values = violation.assignment_dict()
            writer.writerow([values[name] for name in inputs] + [violation.kind, repr(violation.witness)])


def _bar_figure(inputs, table, ylabel, title, path, mean=None):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = _bit_rows(inputs, table)
    labels = ["".join(str(b) for b in bits) for bits, _ in rows]
    values = [value for _, value in rows]
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.bar(range(len(values)), values, color="#4878a8")
    if mean is not None:
        ax.axhline(mean, color="#a84848", linestyle="--", linewidth=1, label=f"mean = {mean:g}")
        ax.legend(loc="lower right")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=90 if len(labels) > 8 else 0, fontsize=8)
    ax.set_xlabel("input vector (" + " ".join(inputs) + ")")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_energy_figure(report: EnergyReport, path: Path | str, name: str) -> None:
    """Bar chart of discharged node count per complementary assignment."""
    _bar_figure(
        report.inputs,
        report.per_assignment,
        "discharged nodes (unit capacitance)",
        f"{name}: energy per evaluation cycle",
        path,
        mean=report.mean,
    )


def render_depth_figure(inputs: tuple[str, ...], depths: dict[tuple[int, ...], int], path: Path | str, name: str) -> None:
    """Bar chart of evaluation depth per complementary assignment."""
    _bar_figure(inputs, depths, "series devices to ground", f"{name}: evaluation depth", path)
