"""Report rendering: JSON, markdown, CSV and the companion figures.

The report path always writes the delimited results table next to the chosen
report document, and renders two figures: per-check wall times coloured by
status, and the growth of the Euler-level coefficients of the main series.
Figure rendering uses the Agg backend so the CLI works headless.
"""

from __future__ import annotations

import csv
import io
import json

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from . import partition_functions as pf  # noqa: E402
from .checks import CheckResult  # noqa: E402
from .oracles import macmahon_signed  # noqa: E402

_PNG_METADATA = {"Software": "motivicdt"}


def to_json(results: list[CheckResult]) -> str:
    return json.dumps([r.to_dict() for r in results], indent=2) + "\n"


def to_markdown(results: list[CheckResult], order: int, seed: int) -> str:
    lines = [
        "# Identity check report",
        "",
        f"Truncation order {order}, seed {seed}; "
        f"{sum(r.passed for r in results)}/{len(results)} checks passed.",
        "",
        "| check | status | first discrepancy | elapsed (ms) |",
        "|---|---|---|---|",
    ]
    for r in results:
        if r.first_discrepancy:
            d = r.first_discrepancy
            disc = f"t^{d['power']}: {d['lhs']} vs {d['rhs']}"
        else:
            disc = ""
        lines.append(f"| {r.check} | {r.status} | {disc} | {r.elapsed_ms} |")
    lines.append("")
    return "\n".join(lines)


def to_csv(results: list[CheckResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["check", "order", "status", "seed",
         "discrepancy_power", "discrepancy_lhs", "discrepancy_rhs", "elapsed_ms"]
    )
    for r in results:
        d = r.first_discrepancy or {}
        writer.writerow(
            [r.check, r.order, r.status, r.seed,
             d.get("power", ""), d.get("lhs", ""), d.get("rhs", ""), r.elapsed_ms]
        )
    return buf.getvalue()


def _figure_check_times(results: list[CheckResult], path):
    names = [r.check for r in results]
    times = [r.elapsed_ms for r in results]
    colors = ["#2a7e3b" if r.passed else "#b03030" for r in results]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.22 * len(results) + 1)))
    ax.barh(range(len(names)), times, color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=6)
    ax.invert_yaxis()
    ax.set_xlabel("elapsed (ms)")
    ax.set_title("identity checks (green = pass, red = fail)")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)


def _figure_euler_growth(order: int, path):
    ns = list(range(order + 1))
    line = [abs(c.euler()) for c in pf.q_quot(pf.line_in_affine3(), order).coeffs]
    con = [abs(c.euler()) for c in pf.q_quot(pf.resolved_conifold(), order).coeffs]
    mac = [abs(c) for c in macmahon_signed(order)]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, line, "o-", label="line in affine 3-space")
    ax.plot(ns, con, "s-", label="conifold curve")
    ax.plot(ns, mac, "^--", label="MacMahon")
    ax.set_yscale("log")
    ax.set_xlabel("number of points n")
    ax.set_ylabel("|Euler coefficient|")
    ax.set_title("Euler-level growth of the partition functions")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)


def write_report(results, outdir, order: int, seed: int, fmt: str = "json") -> list:
    """Write the report document, the CSV table and the figures; returns paths."""
    from pathlib import Path

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    if fmt == "json":
        doc = outdir / "report.json"
        doc.write_text(to_json(results))
    elif fmt == "md":
        doc = outdir / "report.md"
        doc.write_text(to_markdown(results, order, seed))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    written.append(doc)

    table = outdir / "results.csv"
    table.write_text(to_csv(results))
    written.append(table)

    times_png = outdir / "check_times.png"
    _figure_check_times(results, times_png)
    written.append(times_png)

    growth_png = outdir / "euler_growth.png"
    _figure_euler_growth(min(order, 10), growth_png)
    written.append(growth_png)

    return written
