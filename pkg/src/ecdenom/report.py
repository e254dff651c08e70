"""Serialisation of experiment results: CSV rows, canonical JSON, a small SVG chart.

Exact integers (z, x, y, Z) are always written as decimal strings.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys

from .census import CensusResult, DivReport, Prediction, heuristic_count
from .lattice import GrowthFit
from .torsion import TorsionGroup

CSV_COLUMNS = ("nvec", "torsion_index", "z", "log_z", "is_prime", "is_integral")


def dec(n: int) -> str:
    """Decimal string of n, bypassing the interpreter's int-to-str digit cap."""
    try:
        return str(n)
    except ValueError:
        limit = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            return str(n)
        finally:
            sys.set_int_max_str_digits(limit)


def short_int(n: int) -> str:
    """n itself when short, otherwise its size, for log lines."""
    if n.bit_length() <= 100:
        return str(n)
    return f"<{len(dec(n))}-digit integer>"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def census_csv(result: CensusResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in result.rows:
        rec = row.record
        w.writerow([
            ";".join(map(str, rec.nvec)),
            rec.torsion_index,
            dec(rec.z),
            repr(rec.log_z),
            str(row.is_prime).lower(),
            str(rec.z == 1).lower(),
        ])
    return buf.getvalue()


def _curve_meta(meta: dict | None) -> dict:
    return dict(meta or {})


def census_dict(result: CensusResult, meta: dict | None = None) -> dict:
    out = {
        "curve": _curve_meta(meta),
        "Z": dec(result.Z),
        "total_count": result.total_count,
        "prime_count": result.prime_count,
        "shells_visited": result.shells_visited,
        "c_hat": result.c_hat,
        "expected_prime_mass": result.expected_prime_mass(),
        "per_coset": {str(i): {"total": t, "prime": p} for i, (t, p) in result.per_coset().items()},
        "records": [
            {
                "nvec": list(row.record.nvec),
                "torsion_index": row.record.torsion_index,
                "x": dec(row.record.triple.x),
                "y": dec(row.record.triple.y),
                "z": dec(row.record.z),
                "log_z": row.record.log_z,
                "is_prime": row.is_prime,
                "is_integral": row.record.z == 1,
            }
            for row in result.rows
        ],
    }
    if result.Z > math.e and result.total_count:
        ratio = result.prime_count / result.total_count
        out["corollary"] = {"ratio": ratio, "bound": 1.0 / math.log(math.log(result.Z))}
    return out


def torsion_dict(T: TorsionGroup, meta: dict | None = None) -> dict:
    return {
        "curve": _curve_meta(meta),
        "order": T.order,
        "structure": T.describe(),
        "invariants": list(T.invariants),
        "points": ["O" if P.is_infinity else [str(P.x), str(P.y)] for P in T.points],
    }


def div_report_dict(rep: DivReport, meta: dict | None = None) -> dict:
    return {
        "curve": _curve_meta(meta),
        "nmax": rep.nmax,
        "divisibility_failures": [list(p) for p in rep.divisibility_failures],
        "primality_exceptions": [{"n": n, "z": dec(z)} for n, z in rep.primality_exceptions],
        "primitive_divisor_misses": list(rep.primitive_divisor_misses),
    }


def growth_dict(fit: GrowthFit, meta: dict | None = None) -> dict:
    return {
        "curve": _curve_meta(meta),
        "n_min": fit.n_min,
        "n_max": fit.n_max,
        "samples": fit.samples,
        "c_hat": fit.c_hat,
        "C_hat": fit.C_hat,
        "slope": fit.slope,
    }


def prediction_dict(pred: Prediction, Z: int, kappa: float) -> dict:
    return {"rank": pred.rank, "Z": dec(Z), "kappa": kappa, "regime": pred.regime, "value": pred.value}


def z_grid(max_z: int) -> list[int]:
    """Powers of ten below max_z, then max_z itself."""
    grid, Z = [], 10
    while Z < max_z:
        grid.append(Z)
        Z *= 10
    grid.append(max_z)
    return grid


def census_svg(result: CensusResult, rank: int, kappa: float = 1.0, title: str = "") -> str:
    """Log-log scatter of prime_count against Z with the heuristic curve overlaid."""
    grid = z_grid(result.Z)
    pts = [(math.log10(Z), result.restrict(Z).prime_count) for Z in grid]
    pred = [(math.log10(Z), heuristic_count(rank, Z, kappa).value) for Z in grid if Z > math.e]

    W, H, pad = 640, 420, 60
    xs = [p[0] for p in pts]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x1 = x0 + 1
    # counts plotted as log10(1 + count) so zero stays on the axis
    ys = [math.log10(1 + c) for _, c in pts] + [math.log10(1 + v) for _, v in pred]
    y1 = max(ys + [1.0])

    def sx(v):
        return pad + (v - x0) / (x1 - x0) * (W - 2 * pad)

    def sy(v):
        return H - pad - math.log10(1 + v) / y1 * (H - 2 * pad)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<title>{title or "prime-denominator census"}</title>',
        f'<line x1="{pad}" y1="{H - pad}" x2="{W - pad}" y2="{H - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{H - pad}" stroke="black"/>',
        f'<text x="{W // 2}" y="{H - 15}" text-anchor="middle" font-size="12">log10 Z</text>',
        f'<text x="15" y="{H // 2}" font-size="12" transform="rotate(-90 15 {H // 2})" '
        f'text-anchor="middle">#prime z (log scale, 1+count)</text>',
    ]
    for lx, _ in pts:
        lines.append(f'<text x="{sx(lx):.2f}" y="{H - pad + 15}" text-anchor="middle" font-size="10">{lx:.0f}</text>')
    if len(pred) > 1:
        path = " ".join(f"{sx(x):.2f},{sy(v):.2f}" for x, v in pred)
        lines.append(f'<polyline points="{path}" fill="none" stroke="#c33" stroke-dasharray="4 3"/>')
    for lx, c in pts:
        lines.append(f'<circle cx="{sx(lx):.2f}" cy="{sy(c):.2f}" r="3.5" fill="#236"><title>{c}</title></circle>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
