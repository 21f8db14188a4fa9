"""Experiment reports: delimited output plus optional rendered figures.

Row schema is fixed: instance_id, algorithm, seed, hits, opt, ratio,
runtime_ms.  Ratios are exact rationals written as ``num/den``.  Reports are
byte-identical across re-runs with the same seeds; wall-clock timing is
opt-in (`--timing`) precisely because it would break that guarantee, so the
runtime column is 0 unless asked for.

Figures are rendered with matplotlib to a file next to (or named like) the
delimited output; they are a visualization of the same rows, never a data
interface of their own.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

CSV_COLUMNS = ["instance_id", "algorithm", "seed", "hits", "opt", "ratio", "runtime_ms"]


def format_ratio(r: Fraction | None) -> str:
    if r is None:
        return ""
    return f"{r.numerator}/{r.denominator}"


@dataclass
class ReportRow:
    instance_id: str
    algorithm: str
    seed: int
    hits: int
    opt: int | None
    ratio: Fraction | None
    runtime_ms: int = 0


@dataclass
class ExperimentReport:
    rows: list[ReportRow] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def max_ratio(self) -> Fraction | None:
        ratios = [r.ratio for r in self.rows if r.ratio is not None]
        return max(ratios) if ratios else None

    @property
    def mean_ratio(self) -> Fraction | None:
        ratios = [r.ratio for r in self.rows if r.ratio is not None]
        return sum(ratios, Fraction(0)) / len(ratios) if ratios else None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([
                r.instance_id, r.algorithm, r.seed, r.hits,
                "" if r.opt is None else r.opt,
                format_ratio(r.ratio), r.runtime_ms,
            ])
        w.writerow(["max_ratio", "aggregate", "", "", "", format_ratio(self.max_ratio), ""])
        w.writerow(["mean_ratio", "aggregate", "", "", "", format_ratio(self.mean_ratio), ""])
        for key, value in sorted(self.extras.items()):
            w.writerow([key, "aggregate", "", "", "", str(value), ""])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "rows": [
                {
                    "instance_id": r.instance_id,
                    "algorithm": r.algorithm,
                    "seed": r.seed,
                    "hits": r.hits,
                    "opt": r.opt,
                    "ratio": format_ratio(r.ratio) or None,
                    "runtime_ms": r.runtime_ms,
                }
                for r in self.rows
            ],
            "aggregate": {
                "max_ratio": format_ratio(self.max_ratio) or None,
                "mean_ratio": format_ratio(self.mean_ratio) or None,
                **{k: str(v) for k, v in sorted(self.extras.items())},
            },
        }
        return json.dumps(doc, indent=2) + "\n"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_ratio_figure(report: ExperimentReport, path: str) -> None:
    """Bar chart of per-run competitive ratios, one group color per algorithm."""
    plt = _pyplot()
    rows = [r for r in report.rows if r.ratio is not None]
    fig, ax = plt.subplots(figsize=(max(6, 0.35 * len(rows) + 2), 4))
    algorithms = sorted({r.algorithm for r in rows})
    colors = {a: f"C{i}" for i, a in enumerate(algorithms)}
    xs = range(len(rows))
    ax.bar(xs, [float(r.ratio) for r in rows], color=[colors[r.algorithm] for r in rows])
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"{r.instance_id}\n{r.algorithm}/{r.seed}" for r in rows],
                       fontsize=7, rotation=90)
    if report.max_ratio is not None:
        ax.axhline(float(report.max_ratio), color="gray", ls="--", lw=1,
                   label=f"max {format_ratio(report.max_ratio)}")
        ax.legend(fontsize=8)
    ax.set_ylabel("|A| / |OPT|")
    ax.set_title("competitive ratios")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_bookkeeping_figure(b_sizes: list[int], bound: int, path: str) -> None:
    """Per-run bookkeeping-set sizes against the deterministic ceiling."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(range(1, len(b_sizes) + 1), b_sizes, "o-", ms=3, label="|B| per run")
    ax.axhline(bound, color="red", ls="--", lw=1, label=f"bound {bound}")
    ax.set_xlabel("run")
    ax.set_ylabel("|B|")
    ax.set_ylim(bottom=0)
    ax.legend(fontsize=8)
    ax.set_title("reweighting bookkeeping size")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
