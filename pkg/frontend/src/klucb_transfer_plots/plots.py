"""Log-x regret curves with standard-error bars, from aggregated CSV files.

CSV contract (one header + data rows, LF newlines):

    policy,t,mean_regret,sem,runs

Rendering is deterministic: fixed figure size, a color cycle keyed by curve
order, a fixed SVG hash salt, and no timestamp metadata in the output files.
Plotted values are taken from the CSV exactly; no smoothing or resampling.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

EXPECTED_HEADER = "policy,t,mean_regret,sem,runs"

# Fixed palette so curve colors depend only on curve order.
PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


class MalformedCsvError(ValueError):
    """Raised when an input CSV violates the header/row contract."""


@dataclass(frozen=True)
class Curve:
    label: str
    t: tuple[int, ...]
    mean_regret: tuple[float, ...]
    sem: tuple[float, ...]
    runs: int

    @property
    def has_error_bars(self) -> bool:
        return self.runs >= 2 and any(s > 0.0 for s in self.sem)


@dataclass(frozen=True)
class PlotSpec:
    inputs: tuple[tuple[str, str], ...]  # (csv_path, display_label)
    output: str  # base path; .svg and .png are appended
    title: str = ""
    x_scale: str = "log"
    error_bar_stride: int = 10

    def __post_init__(self):
        if not self.inputs:
            raise ValueError("PlotSpec needs at least one input CSV")
        if self.error_bar_stride < 1:
            raise ValueError("error_bar_stride must be >= 1")
        if self.x_scale not in ("log", "linear"):
            raise ValueError(f"unsupported x_scale {self.x_scale!r}")

    @classmethod
    def from_json(cls, path) -> "PlotSpec":
        try:
            d = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON: {exc}") from exc
        try:
            inputs = tuple(
                (str(i["path"]), str(i.get("label", Path(i["path"]).stem)))
                for i in d["inputs"]
            )
            return cls(
                inputs=inputs,
                output=str(d["output"]),
                title=str(d.get("title", "")),
                x_scale=str(d.get("x_scale", "log")),
                error_bar_stride=int(d.get("error_bar_stride", 10)),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"{path}: missing or malformed field: {exc}") from exc


def _parse_row(path, lineno: int, line: str) -> tuple[str, int, float, float, int]:
    parts = line.split(",")
    if len(parts) != 5:
        raise MalformedCsvError(
            f"{path}:{lineno}: expected 5 columns, got {len(parts)}"
        )
    policy = parts[0]
    if not policy:
        raise MalformedCsvError(f"{path}:{lineno}: empty policy column")
    out = []
    for col, (name, conv) in zip(
        parts[1:], (("t", int), ("mean_regret", float), ("sem", float), ("runs", int))
    ):
        try:
            out.append(conv(col))
        except ValueError as exc:
            raise MalformedCsvError(
                f"{path}:{lineno}: column {name!r}: cannot parse {col!r}"
            ) from exc
    t, mean_regret, sem, runs = out
    if t < 1:
        raise MalformedCsvError(f"{path}:{lineno}: t must be >= 1, got {t}")
    if sem < 0:
        raise MalformedCsvError(f"{path}:{lineno}: negative sem {sem}")
    if runs < 1:
        raise MalformedCsvError(f"{path}:{lineno}: runs must be >= 1, got {runs}")
    return policy, t, mean_regret, sem, runs


def read_curves(path, label: str) -> list[Curve]:
    """Parse one CSV into curves (one per policy), with row/column diagnostics."""
    p = Path(path)
    if not p.is_file():
        raise MalformedCsvError(f"{path}: file not found")
    lines = p.read_text(encoding="utf-8").split("\n")
    if not lines or lines[0] != EXPECTED_HEADER:
        raise MalformedCsvError(
            f"{path}:1: bad header {lines[0]!r}; expected {EXPECTED_HEADER!r}"
        )
    rows: dict[str, list[tuple[int, float, float, int]]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        policy, t, m, s, runs = _parse_row(path, lineno, line)
        rows.setdefault(policy, []).append((t, m, s, runs))
    if not rows:
        raise MalformedCsvError(f"{path}: no data rows")
    curves = []
    for policy in sorted(rows):
        recs = sorted(rows[policy])
        runs_set = {r[3] for r in recs}
        if len(runs_set) != 1:
            raise MalformedCsvError(
                f"{path}: inconsistent runs column for policy {policy!r}: "
                f"{sorted(runs_set)}"
            )
        name = label if len(rows) == 1 else f"{label} ({policy})"
        curves.append(
            Curve(
                label=name,
                t=tuple(r[0] for r in recs),
                mean_regret=tuple(r[1] for r in recs),
                sem=tuple(r[2] for r in recs),
                runs=recs[0][3],
            )
        )
    return curves


def render(spec: PlotSpec) -> list[Path]:
    """Render the figure described by `spec`; returns the written image paths."""
    curves: list[Curve] = []
    for path, label in spec.inputs:
        curves.extend(read_curves(path, label))

    with plt.rc_context({"svg.hashsalt": "klucb-transfer-plots"}):
        fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=100)
        for i, curve in enumerate(curves):
            color = PALETTE[i % len(PALETTE)]
            if curve.has_error_bars:
                ax.errorbar(
                    curve.t,
                    curve.mean_regret,
                    yerr=curve.sem,
                    errorevery=spec.error_bar_stride,
                    capsize=2.0,
                    linewidth=1.2,
                    elinewidth=0.8,
                    color=color,
                    label=curve.label,
                )
            else:
                warnings.warn(
                    f"curve {curve.label!r} has no usable sem values "
                    f"(runs={curve.runs}); drawing without error bars",
                    stacklevel=2,
                )
                ax.plot(
                    curve.t, curve.mean_regret,
                    linewidth=1.2, color=color, label=curve.label,
                )
        ax.set_xscale(spec.x_scale)
        ax.set_xlabel("round $t$")
        ax.set_ylabel("mean cumulative regret")
        if spec.title:
            ax.set_title(spec.title)
        ax.legend(loc="upper left", fontsize=8)
        ax.grid(True, which="both", alpha=0.25)
        fig.tight_layout()

        written = []
        for ext in ("svg", "png"):
            out = Path(f"{spec.output}.{ext}")
            out.parent.mkdir(parents=True, exist_ok=True)
            # Empty metadata keeps repeated renders byte-comparable.
            meta = {"Date": None} if ext == "svg" else {"Software": None}
            fig.savefig(out, format=ext, metadata=meta)
            written.append(out)
        plt.close(fig)
    return written
