"""
Exploration reports: ranked CSV, JSON with the Pareto subset flagged,
and a latency-vs-logic extract for plotting
"""
import json
import logging
import math
import os
from pathlib import Path

import pandas as pd

from src.dse.pareto import pareto_front

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "scheme", "arch", "mem_org", "accuracy", "cycles", "latency_s", "energy_j",
    "memory_bits", "logic_cells", "registers", "cost", "feasible", "pareto",
]


def report_frame(points, axes=("latency", "logic")) -> pd.DataFrame:
    """One row per design point, in the given order"""
    front = {id(p) for p in pareto_front(points, axes)} if points else set()
    rows = []
    for p in points:
        row = p.to_dict()
        row["pareto"] = id(p) in front
        rows.append({c: row.get(c) for c in CSV_COLUMNS})
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def tradeoff_frame(points) -> pd.DataFrame:
    """Latency vs logic per scheme, sorted by latency within each scheme"""
    frame = pd.DataFrame(
        [{"scheme": p.scheme.value, "latency_s": p.report.latency_s, "logic_cells": p.report.logic_cells}
         for p in points],
        columns=["scheme", "latency_s", "logic_cells"],
    )
    return frame.sort_values(["scheme", "latency_s", "logic_cells"], kind="stable").reset_index(drop=True)


def companion_paths(csv_path) -> dict:
    csv_path = Path(csv_path)
    return {
        "csv": csv_path,
        "json": csv_path.with_suffix(".json"),
        "tradeoff": csv_path.with_name(f"{csv_path.stem}_tradeoff.csv"),
    }


def _json_safe(value):
    if isinstance(value, float) and math.isinf(value):
        return None
    return value


def write_report(points, csv_path, axes=("latency", "logic")) -> dict:
    """
    Write CSV, Pareto JSON and trade-off extract

    Every file goes to a temporary name first and is renamed once all of
    them are written, so a failure leaves no partial report.

    Returns:
        {"csv": Path, "json": Path, "tradeoff": Path}
    """
    paths = companion_paths(csv_path)
    paths["csv"].parent.mkdir(parents=True, exist_ok=True)
    frame = report_frame(points, axes)
    payload = {
        "axes": list(axes),
        "points": [{k: _json_safe(v) for k, v in row.items()} for row in frame.to_dict(orient="records")],
        "pareto": [i for i, flag in enumerate(frame["pareto"].tolist()) if flag],
    }

    temporaries = {key: path.with_name(f".{path.name}.tmp") for key, path in paths.items()}
    try:
        frame.to_csv(temporaries["csv"], index=False)
        with open(temporaries["json"], "w") as f:
            json.dump(payload, f, indent=2)
        tradeoff_frame(points).to_csv(temporaries["tradeoff"], index=False)
        for key, tmp in temporaries.items():
            os.replace(tmp, paths[key])
    finally:
        for tmp in temporaries.values():
            if tmp.exists():
                tmp.unlink()
    logger.info("Wrote report with %d design points to %s", len(points), paths["csv"])
    return paths


def read_report(csv_path) -> pd.DataFrame:
    frame = pd.read_csv(csv_path)
    missing = set(CSV_COLUMNS) - set(frame.columns)
    if missing:
        raise ValueError(f"{csv_path}: not a design-space report (missing {sorted(missing)})")
    return frame


def format_ranking(frame: pd.DataFrame, top: int = None) -> str:
    """Text table of the ranked design points"""
    shown = frame if top is None else frame.head(top)
    lines = [f"{'#':>3}  {'scheme':<6} {'arch':<4} {'mem_org':<18} {'latency_s':>11} "
             f"{'energy_j':>11} {'logic':>9} {'cost':>11}  pareto"]
    for rank, row in enumerate(shown.itertuples(index=False), start=1):
        cost = "inf" if pd.isna(row.cost) else f"{row.cost:.3e}"
        lines.append(
            f"{rank:>3}  {row.scheme:<6} {row.arch:<4} {row.mem_org:<18} {row.latency_s:>11.3e} "
            f"{row.energy_j:>11.3e} {row.logic_cells:>9.0f} {cost:>11}  {'*' if row.pareto else ''}"
        )
    return "\n".join(lines)
