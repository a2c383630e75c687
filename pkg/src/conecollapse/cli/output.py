"""CSV and SVG writers for the reproduction harness."""

from __future__ import annotations

import math
import subprocess
from pathlib import Path
from typing import Iterable, Mapping, Sequence
from xml.sax.saxutils import escape

import numpy as np

from conecollapse import __version__


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return "%.17g" % float(v)


_BUILD: str | None = None


def build_description() -> str:
    """Package version plus ``git describe`` of the source tree when available."""
    global _BUILD
    if _BUILD is None:
        desc = ""
        try:
            desc = subprocess.run(
                ["git", "describe", "--always", "--dirty"],
                cwd=Path(__file__).resolve().parent,
                capture_output=True, text=True, timeout=5, check=False,
            ).stdout.strip()
        except (OSError, subprocess.SubprocessError):
            pass
        _BUILD = f"{__version__} ({desc})" if desc else __version__
    return _BUILD


def write_csv(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    meta: Mapping[str, object] | None = None,
) -> Path:
    """Write ``#``-prefixed metadata, a header row, then data rows."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# build={build_description()}"]
    for k in sorted(meta or {}):
        lines.append(f"# {k}={_fmt(meta[k]) if not isinstance(meta[k], (list, tuple)) else ' '.join(_fmt(v) for v in meta[k])}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def _cell(x: str) -> float:
    try:
        return float(x)
    except ValueError:
        return float("nan")


def read_rows(path: Path) -> list[list[str]]:
    """Data rows as strings, skipping metadata and the header."""
    lines = [l for l in Path(path).read_text().splitlines() if l and not l.startswith("#")]
    return [l.split(",") for l in lines[1:]]


def read_csv(path: Path) -> tuple[dict[str, str], list[str], np.ndarray]:
    """(metadata, column names, data) of a file written by write_csv; text cells read as NaN."""
    meta: dict[str, str] = {}
    header: list[str] | None = None
    data = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition("=")
            meta[k] = v
        elif header is None:
            header = line.split(",")
        elif line:
            data.append([_cell(x) for x in line.split(",")])
    return meta, header or [], np.array(data)


# ------------------------------------------------------------------ svg

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b")


def write_svg(
    path: Path,
    series: Sequence[tuple[str, np.ndarray, np.ndarray]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    logx: bool = False,
    logy: bool = False,
    width: int = 640,
    height: int = 420,
) -> Path:
    """Minimal line plot; one polyline per (label, x, y) series."""
    margin = 60
    xs, ys = [], []
    for _, x, y in series:
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        ok = np.isfinite(x) & np.isfinite(y)
        if logx:
            ok &= x > 0
        if logy:
            ok &= y > 0
        xs.append(np.log10(x[ok]) if logx else x[ok])
        ys.append(np.log10(y[ok]) if logy else y[ok])
    allx = np.concatenate(xs) if xs else np.array([0.0, 1.0])
    ally = np.concatenate(ys) if ys else np.array([0.0, 1.0])
    x0, x1 = (float(allx.min()), float(allx.max())) if allx.size else (0.0, 1.0)
    y0, y1 = (float(ally.min()), float(ally.max())) if ally.size else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(v):
        return margin + (v - x0) / (x1 - x0) * (width - 2 * margin)

    def py(v):
        return height - margin - (v - y0) / (y1 - y0) * (height - 2 * margin)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" height="{height - 2 * margin}" '
        'fill="none" stroke="black"/>',
        f'<text x="{width / 2}" y="{margin / 2}" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="{width / 2}" y="{height - 15}" text-anchor="middle" font-size="12">{escape(xlabel)}</text>',
        f'<text x="15" y="{height / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 15 {height / 2})">{escape(ylabel)}</text>',
    ]
    for v, anchor in ((x0, "start"), (x1, "end")):
        lab = f"1e{v:.3g}" if logx else f"{v:.3g}"
        out.append(f'<text x="{px(v)}" y="{height - margin + 16}" text-anchor="{anchor}" font-size="10">{lab}</text>')
    for v in (y0, y1):
        lab = f"1e{v:.3g}" if logy else f"{v:.3g}"
        out.append(f'<text x="{margin - 4}" y="{py(v)}" text-anchor="end" font-size="10">{lab}</text>')
    for i, ((label, _, _), x, y) in enumerate(zip(series, xs, ys)):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>')
        out.append(
            f'<text x="{width - margin - 4}" y="{margin + 14 * (i + 1)}" text-anchor="end" '
            f'font-size="11" fill="{color}">{escape(label)}</text>'
        )
    out.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n")
    return path


def finite(v: float) -> float:
    return v if math.isfinite(v) else float("nan")
