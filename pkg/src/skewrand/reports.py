"""Serialisation of reports and tables: JSON, CSV and a small SVG histogram.

Floats are written with 9 significant digits so identical runs produce
byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

import numpy as np

from . import lsd
from .experiments import ConcentrationReport, EnergyEstimate, EsdReport

__all__ = ["to_jsonable", "dumps_json", "dumps_csv", "report_table", "esd_svg"]


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    return float(f"{x:.9g}")


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    return _num(obj)


def dumps_json(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2) + "\n"


def _cell(x) -> str:
    if isinstance(x, str):
        return x
    v = _num(x)
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def dumps_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def report_table(report) -> tuple[list[str], list[list]]:
    """Flatten a report into CSV rows, one per trial or per bin."""
    if isinstance(report, EnergyEstimate):
        header = ["trial", "seed", "normalized_energy", "reference_constant"]
        rows = [
            [t, s, v, report.reference_constant]
            for t, (s, v) in enumerate(zip(report.trial_seeds, report.normalized_energies))
        ]
        return header, rows
    if isinstance(report, EsdReport):
        header = ["bin_left", "bin_right", "count", "density", "reference_density"]
        total = sum(report.counts)
        law = _law_from_name(report.law)
        rows = []
        for i, c in enumerate(report.counts):
            left, right = report.bin_edges[i], report.bin_edges[i + 1]
            width = right - left
            mid = 0.5 * (left + right)
            rows.append([left, right, c, c / (total * width), lsd.pdf(law, mid)])
        return header, rows
    if isinstance(report, ConcentrationReport):
        header = ["trial", "count", "expected", "within"]
        rows = [
            [t, c, report.expected, int(abs(c - report.expected) < report.delta * report.expected)]
            for t, c in enumerate(report.counts)
        ]
        return header, rows
    raise TypeError(f"no table layout for {type(report).__name__}")


def _law_from_name(name: str) -> lsd.DensityModel:
    if name == "semicircle":
        return lsd.SEMICIRCLE
    return lsd.mckay(int(name.split("=")[1].rstrip(")")))


def esd_svg(report: EsdReport, width: int = 640, height: int = 400) -> str:
    """Histogram of the pooled spectrum with the reference density overlaid."""
    law = _law_from_name(report.law)
    edges = np.asarray(report.bin_edges)
    counts = np.asarray(report.counts, dtype=float)
    dens = counts / (counts.sum() * np.diff(edges))
    xs = np.linspace(edges[0], edges[-1], 400)
    ref = np.asarray(lsd.pdf(law, xs))
    # McKay(2) is unbounded at the edges; cap the plot height
    ymax = max(float(dens.max()), float(np.minimum(ref, 3 * dens.max() + 1e-12).max())) * 1.1 or 1.0
    pad = 40
    sx = lambda x: pad + (x - edges[0]) / (edges[-1] - edges[0]) * (width - 2 * pad)
    sy = lambda y: height - pad - min(y, ymax) / ymax * (height - 2 * pad)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for left, right, h in zip(edges[:-1], edges[1:], dens):
        x0, x1, y = sx(left), sx(right), sy(h)
        out.append(
            f'<rect x="{x0:.2f}" y="{y:.2f}" width="{x1 - x0:.2f}" '
            f'height="{height - pad - y:.2f}" fill="#9ecae1" stroke="#3182bd" stroke-width="0.5"/>'
        )
    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ref))
    out.append(f'<polyline points="{pts}" fill="none" stroke="#d62728" stroke-width="1.5"/>')
    axis_y = height - pad
    out.append(f'<line x1="{pad}" y1="{axis_y}" x2="{width - pad}" y2="{axis_y}" stroke="black"/>')
    for tick in np.linspace(edges[0], edges[-1], 5):
        out.append(
            f'<text x="{sx(tick):.2f}" y="{axis_y + 15}" font-size="11" '
            f'text-anchor="middle">{tick:.2f}</text>'
        )
    title = f"{report.law}: {report.trials} trial(s), KS = {report.ks_distance:.4f}"
    out.append(f'<text x="{width / 2}" y="20" font-size="13" text-anchor="middle">{title}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
