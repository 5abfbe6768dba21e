"""Experiment orchestration: instance file I/O, parameter sweeps over the
instance families, log-log exponent fitting, and report serialization.

Instance JSON schema:
    {"p": <int>, "points": [[x, y], ...],
     "lines": [{"kind": "sl", "s": <int>, "t": <int>} | {"kind": "v", "x": <int>}, ...]}
with all coordinates canonical residues in [0, p).

3D instance JSON schema (for point-plane counting):
    {"p": <int>, "points": [[x, y, z], ...], "planes": [[a, b, c, d], ...]}
with planes read as a*x + b*y + c*z = d.

Sweep CSV schema (fixed header, absent fields empty):
    family,p,m,n,a,b,I,E,k,hyp_1_2,hyp_1_3,hyp_1_4,bound_table1,bound_comb,bound_vinh,ratio_main
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass
from typing import Iterable

from .constructions import (
    derive_seed,
    elekes_construction,
    full_plane,
    random_instance,
)
from .energy import line_energy, energy_reduction
from .errors import (
    CompositeModulusError,
    ConfigError,
    Error,
    InsufficientDataError,
    NonPositiveValueError,
    OutOfRangeError,
    ParseError,
)
from .field import make_modulus
from .incidence import (
    PlaneInstance3D,
    check_hypotheses,
    count_incidences,
    reference_bound,
)
from .plane import AffineLine, AffinePoint, Instance

CSV_HEADER = "family,p,m,n,a,b,I,E,k,hyp_1_2,hyp_1_3,hyp_1_4,bound_table1,bound_comb,bound_vinh,ratio_main"

# an energy reduction has (a*n)^2 point-plane pairs; skip it beyond this size
ENERGY_REDUCTION_CAP = 5000


class DuplicateEntryWarning(UserWarning):
    """Raised (as a warning) when a file lists the same point or line twice."""

    def __init__(self, duplicate_points: int, duplicate_lines: int):
        self.duplicate_points = duplicate_points
        self.duplicate_lines = duplicate_lines
        super().__init__(
            f"dropped {duplicate_points} duplicate point(s) and {duplicate_lines} duplicate line(s)"
        )


def _require(cond, message):
    if not cond:
        raise ParseError(message)


def instance_to_dict(inst: Instance) -> dict:
    lines = []
    for line in inst.lines:
        if line.slope is None:
            lines.append({"kind": "v", "x": line.intercept})
        else:
            lines.append({"kind": "sl", "s": line.slope, "t": line.intercept})
    return {"p": inst.p, "points": [[q.x, q.y] for q in inst.points], "lines": lines}


def instance_from_dict(data: dict) -> Instance:
    _require(isinstance(data, dict), "instance file must hold a JSON object")
    for key in ("p", "points", "lines"):
        _require(key in data, f"missing field {key!r}")
    p = data["p"]
    _require(isinstance(p, int), "field 'p' must be an integer")
    try:
        modulus = make_modulus(p)
    except (CompositeModulusError, OutOfRangeError) as exc:
        raise ParseError(f"field 'p': {exc}") from exc
    points = []
    for i, entry in enumerate(data["points"]):
        _require(isinstance(entry, list) and len(entry) == 2, f"points[{i}] must be a pair [x, y]")
        x, y = entry
        _require(isinstance(x, int) and isinstance(y, int), f"points[{i}] must hold integers")
        _require(0 <= x < p and 0 <= y < p, f"points[{i}] must hold canonical residues in [0, {p})")
        points.append(AffinePoint(x, y, p))
    lines = []
    for i, entry in enumerate(data["lines"]):
        _require(isinstance(entry, dict) and "kind" in entry, f"lines[{i}] needs a 'kind' field")
        kind = entry["kind"]
        if kind == "sl":
            _require("s" in entry and "t" in entry, f"lines[{i}] of kind 'sl' needs fields 's' and 't'")
            s, t = entry["s"], entry["t"]
            _require(isinstance(s, int) and isinstance(t, int), f"lines[{i}] must hold integers")
            _require(0 <= s < p and 0 <= t < p, f"lines[{i}] must hold canonical residues in [0, {p})")
            lines.append(AffineLine(s, t, p))
        elif kind == "v":
            _require("x" in entry, f"lines[{i}] of kind 'v' needs field 'x'")
            x = entry["x"]
            _require(isinstance(x, int) and 0 <= x < p, f"lines[{i}] must hold a canonical residue in [0, {p})")
            lines.append(AffineLine(None, x, p))
        else:
            raise ParseError(f"lines[{i}] has unknown kind {kind!r}")
    dup_points = len(points) - len(set(points))
    dup_lines = len(lines) - len(set(lines))
    if dup_points or dup_lines:
        warnings.warn(DuplicateEntryWarning(dup_points, dup_lines), stacklevel=2)
    return Instance(modulus, points, lines)


def read_instance(path) -> Instance:
    """Read an instance file, deduplicating with a warning on duplicates."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return instance_from_dict(data)


def write_instance(inst: Instance, path) -> None:
    """Write an instance in canonical (sorted, deduplicated) order."""
    with open(path, "w") as fh:
        json.dump(instance_to_dict(inst), fh, separators=(",", ":"), sort_keys=True)
        fh.write("\n")


def read_instance3d(path) -> PlaneInstance3D:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    for key in ("p", "points", "planes"):
        _require(key in data, f"missing field {key!r}")
    p = data["p"]
    _require(isinstance(p, int), "field 'p' must be an integer")
    try:
        make_modulus(p)
    except (CompositeModulusError, OutOfRangeError) as exc:
        raise ParseError(f"field 'p': {exc}") from exc
    pts = []
    for i, entry in enumerate(data["points"]):
        _require(isinstance(entry, list) and len(entry) == 3, f"points[{i}] must be a triple")
        pts.append(tuple(entry))
    pls = []
    for i, entry in enumerate(data["planes"]):
        _require(isinstance(entry, list) and len(entry) == 4, f"planes[{i}] must be a 4-tuple")
        pls.append(tuple(entry))
    try:
        return PlaneInstance3D.build(p, pts, pls)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

@dataclass
class SweepRecord:
    """One experiment row with exact counts and float comparators."""

    family: str
    p: int
    m: int | None = None
    n: int | None = None
    a: int | None = None
    b: int | None = None
    incidences: int | None = None
    energy: int | None = None
    k: int | None = None
    hyp_1_2: bool | None = None
    hyp_1_3: bool | None = None
    hyp_1_4: bool | None = None
    bound_table1: float | None = None
    bound_comb: float | None = None
    bound_vinh: float | None = None
    ratio_main: float | None = None
    error: str | None = None

    def csv_row(self) -> str:
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "pass" if v else "fail"
            if isinstance(v, float):
                return f"{v:.4g}"
            return str(v)

        return ",".join(fmt(v) for v in (
            self.family, self.p, self.m, self.n, self.a, self.b,
            self.incidences, self.energy, self.k,
            self.hyp_1_2, self.hyp_1_3, self.hyp_1_4,
            self.bound_table1, self.bound_comb, self.bound_vinh, self.ratio_main,
        ))

    def to_dict(self) -> dict:
        out = {
            "family": self.family, "p": self.p, "m": self.m, "n": self.n,
            "a": self.a, "b": self.b, "I": self.incidences, "E": self.energy,
            "k": self.k, "hyp_1_2": self.hyp_1_2, "hyp_1_3": self.hyp_1_3,
            "hyp_1_4": self.hyp_1_4, "bound_table1": self.bound_table1,
            "bound_comb": self.bound_comb, "bound_vinh": self.bound_vinh,
            "ratio_main": self.ratio_main,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class SweepConfig:
    """A list of family cells plus shared sweep settings.

    families is a list of dicts; each needs a "family" key ("elekes",
    "full_plane" or "random") and per-family parameter lists that are
    expanded as a grid in order.  The random family takes either "m" and "n"
    lists (crossed) or a "sizes" list meaning m = n = size.
    """

    families: list
    seed: int = 0
    ll_constant: float = 1.0
    engine: str = "auto"

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        if not isinstance(data, dict) or "families" not in data:
            raise ConfigError("config must be an object with a 'families' list")
        fams = data["families"]
        if not isinstance(fams, list) or not fams:
            raise ConfigError("'families' must be a nonempty list")
        known = {"elekes", "full_plane", "random"}
        for f in fams:
            if not isinstance(f, dict) or f.get("family") not in known:
                raise ConfigError(f"each family entry needs 'family' in {sorted(known)}")
        return cls(fams, data.get("seed", 0), data.get("ll_constant", 1.0), data.get("engine", "auto"))


def _as_list(v):
    return v if isinstance(v, list) else [v]


def expand_cells(config: SweepConfig) -> list[dict]:
    """Expand every family entry into concrete parameter cells, in config order."""
    cells = []
    for entry in config.families:
        fam = entry["family"]
        if fam == "elekes":
            for p in _as_list(entry.get("p", [])):
                for a in _as_list(entry.get("a", [])):
                    for c in _as_list(entry.get("c", [])):
                        cells.append({"family": fam, "p": p, "a": a, "c": c,
                                      "energy": entry.get("energy", True)})
        elif fam == "full_plane":
            for p in _as_list(entry.get("p", [])):
                cells.append({"family": fam, "p": p})
        elif fam == "random":
            if "sizes" in entry:
                for p in _as_list(entry.get("p", [])):
                    for size in _as_list(entry["sizes"]):
                        cells.append({"family": fam, "p": p, "m": size, "n": size})
            else:
                for p in _as_list(entry.get("p", [])):
                    for m in _as_list(entry.get("m", [])):
                        for n in _as_list(entry.get("n", [])):
                            cells.append({"family": fam, "p": p, "m": m, "n": n})
    if not cells:
        raise ConfigError("the configuration expands to no cells")
    return cells


def _run_cell(cell: dict, index: int, config: SweepConfig) -> SweepRecord:
    fam = cell["family"]
    p = cell["p"]
    c = config.ll_constant
    rec = SweepRecord(family=fam, p=p)
    try:
        if fam == "elekes":
            a, cc = cell["a"], cell["c"]
            inst = elekes_construction(a, cc, p)
            rec.a, rec.b = a, 2 * a * cc
            if cell.get("energy", True):
                A = list(range(1, a + 1))
                rec.energy = line_energy(A, inst.lines, p).value
                if a * inst.n <= ENERGY_REDUCTION_CAP:
                    red = energy_reduction(A, inst.lines, p)
                    rec.k = red.k
                    rec.hyp_1_4 = check_hypotheses("1.4", r=red.r, s=red.s, p=p, c=c).passed
            rec.hyp_1_3 = check_hypotheses("1.3", a=a, b=rec.b, n=inst.n, p=p, c=c).passed
        elif fam == "full_plane":
            inst = full_plane(p)
        elif fam == "random":
            inst = random_instance(p, cell["m"], cell["n"], derive_seed(config.seed, index))
        else:  # pragma: no cover - guarded by expand_cells
            raise ConfigError(f"unknown family {fam!r}")
        rec.m, rec.n = inst.m, inst.n
        rec.incidences = count_incidences(inst, config.engine)
        rec.hyp_1_2 = check_hypotheses("1.2", m=inst.m, n=inst.n, p=p, c=c).passed
        rec.bound_table1 = reference_bound(inst.m, inst.n, p, "table1")[1]
        rec.bound_comb = reference_bound(inst.m, inst.n, p, "combinatorial")[1]
        rec.bound_vinh = reference_bound(inst.m, inst.n, p, "vinh")[1]
        rec.ratio_main = rec.incidences / (inst.m ** (11 / 15) * inst.n ** (11 / 15))
    except Error as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Run every cell of the sweep; deterministic for a fixed config.

    Per-cell failures are recorded in the cell's record and never abort the
    sweep.  Cells may run on a thread pool if the INCIDENCELAB_THREADS
    environment variable asks for more than one worker; output order is
    config order either way.
    """
    cells = expand_cells(config)
    threads = int(os.environ.get("INCIDENCELAB_THREADS", "1"))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda ic: _run_cell(ic[1], ic[0], config), enumerate(cells)))
    return [_run_cell(cell, i, config) for i, cell in enumerate(cells)]


def records_to_csv(records: Iterable[SweepRecord]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv_row() for r in records]) + "\n"


def records_to_json(records: Iterable[SweepRecord]) -> str:
    return json.dumps([r.to_dict() for r in records], sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Exponent fitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    samples: int


_FIELD_ALIASES = {"I": "incidences", "E": "energy"}


def _field_value(record, name):
    if isinstance(record, dict):
        if name in record:
            return record[name]
        return record.get(_FIELD_ALIASES.get(name, name))
    return getattr(record, _FIELD_ALIASES.get(name, name))


def fit_exponent(records, x_field: str, y_field: str) -> FitResult:
    """Least-squares line through (log x, log y) over the given records.

    Closed-form mean-centered least squares, so exactly constant y gives
    slope exactly 0.0.  Records may be SweepRecord objects or dicts keyed by
    CSV column names.
    """
    xs, ys = [], []
    for rec in records:
        xv = _field_value(rec, x_field)
        yv = _field_value(rec, y_field)
        if xv is None or yv is None:
            continue
        if xv <= 0 or yv <= 0:
            raise NonPositiveValueError(
                f"log-log fit needs positive values, got {x_field}={xv}, {y_field}={yv}")
        xs.append(math.log(xv))
        ys.append(math.log(yv))
    if len(xs) < 2:
        raise InsufficientDataError(f"need at least 2 records with both fields, got {len(xs)}")
    nsamp = len(xs)
    mx = sum(xs) / nsamp
    my = sum(ys) / nsamp
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    if sxx == 0:
        raise InsufficientDataError("all x values coincide, the slope is undefined")
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_tot = sum((y - my) ** 2 for y in ys)
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return FitResult(slope, intercept, r2, nsamp)


def fit_scatter_svg(records, x_field: str, y_field: str, fit: FitResult) -> str:
    """A small self-contained log-log scatter plot with the fitted line."""
    pts = []
    for rec in records:
        xv = _field_value(rec, x_field)
        yv = _field_value(rec, y_field)
        if xv and yv and xv > 0 and yv > 0:
            pts.append((math.log10(xv), math.log10(yv)))
    if not pts:
        raise InsufficientDataError("nothing to plot")
    w, h, margin = 640, 480, 50
    lx = [q[0] for q in pts]
    ly = [q[1] for q in pts]
    x0, x1 = min(lx), max(lx)
    y0, y1 = min(ly), max(ly)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def sx(v):
        return margin + (v - x0) / (x1 - x0) * (w - 2 * margin)

    def sy(v):
        return h - margin - (v - y0) / (y1 - y0) * (h - 2 * margin)

    ln10 = math.log(10)
    fy0 = (fit.intercept + fit.slope * x0 * ln10) / ln10
    fy1 = (fit.intercept + fit.slope * x1 * ln10) / ln10
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<line x1="{margin}" y1="{h - margin}" x2="{w - margin}" y2="{h - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{h - margin}" stroke="black"/>',
        f'<line x1="{sx(x0):.2f}" y1="{sy(fy0):.2f}" x2="{sx(x1):.2f}" y2="{sy(fy1):.2f}" stroke="crimson" stroke-width="1.5"/>',
    ]
    for qx, qy in pts:
        parts.append(f'<circle cx="{sx(qx):.2f}" cy="{sy(qy):.2f}" r="3" fill="steelblue"/>')
    parts.append(
        f'<text x="{margin}" y="{margin - 15}" font-family="monospace" font-size="13">'
        f'log10 {y_field} vs log10 {x_field}; slope {fit.slope:.4f}, R^2 {fit.r_squared:.4f}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def read_records(path) -> list[dict]:
    """Read sweep records back from a CSV or JSON file."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("["):
        return json.loads(text)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ParseError(f"{path}: expected the sweep CSV header")
    out = []
    cols = CSV_HEADER.split(",")
    for ln in lines[1:]:
        vals = ln.split(",")
        if len(vals) != len(cols):
            raise ParseError(f"{path}: row with {len(vals)} fields, expected {len(cols)}")
        rec = {}
        for key, raw in zip(cols, vals):
            if raw == "":
                rec[key] = None
            elif raw in ("pass", "fail"):
                rec[key] = raw == "pass"
            else:
                try:
                    rec[key] = int(raw)
                except ValueError:
                    try:
                        rec[key] = float(raw)
                    except ValueError:
                        rec[key] = raw
        out.append(rec)
    return out
