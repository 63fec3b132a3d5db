"""Wave-number sweeps, CSV output and figure presets."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .entanglement import COMBINE_MODES, negativities
from .lattice_models import ChainParams, ZpnrParams
from .scattering import scatter_many
from .spin_algebra import basis_index

COLUMNS = ("k0", "E", "R", "T", "neg_R", "neg_T", "neg_total")
MODELS = ("chain", "zpnr")


class ConfigError(ValueError):
    """Invalid sweep configuration (CLI exit code 2)."""


@dataclass(frozen=True)
class SweepConfig:
    model: str = "chain"
    m: int = 2
    u_prime: float = 10.0
    initial: str = "udd"
    k_min: float = 0.01
    k_max: float = math.pi - 0.01
    k_steps: int = 1000
    combine_mode: str = "weighted"
    output: Optional[str] = None
    diag_shift: str = "residue"

    def validate(self) -> "SweepConfig":
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        if int(self.m) != self.m or self.m < 0:
            raise ConfigError(f"m must be a non-negative integer, got {self.m!r}")
        if not math.isfinite(self.u_prime):
            raise ConfigError("u_prime must be finite")
        try:
            basis_index(self.initial)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not 0 < self.k_min < self.k_max < math.pi:
            raise ConfigError(f"need 0 < k_min < k_max < pi, got k_min={self.k_min}, k_max={self.k_max}")
        if self.k_steps < 2:
            raise ConfigError("k_steps must be at least 2")
        if self.combine_mode not in COMBINE_MODES:
            raise ConfigError(f"combine_mode must be one of {COMBINE_MODES}, got {self.combine_mode!r}")
        if self.diag_shift not in ("residue", "quarter"):
            raise ConfigError(f"diag_shift must be 'residue' or 'quarter', got {self.diag_shift!r}")
        return self

    def params(self):
        if self.model == "chain":
            return ChainParams.from_u_prime(self.u_prime)
        return ZpnrParams.from_u_prime(self.u_prime, diag_shift=self.diag_shift)

    def grid(self) -> np.ndarray:
        return np.linspace(self.k_min, self.k_max, self.k_steps)


_FIELD_TYPES = {"m": int, "u_prime": float, "k_min": float, "k_max": float, "k_steps": int}


def config_from_mapping(values: dict, base: SweepConfig = SweepConfig()) -> SweepConfig:
    """Overlay string or typed values (keys with dashes or underscores) on ``base``."""
    known = {f.name for f in fields(SweepConfig)}
    updates = {}
    for key, value in values.items():
        name = key.strip().replace("-", "_")
        if name not in known:
            raise ConfigError(f"unknown configuration key {key!r}")
        conv = _FIELD_TYPES.get(name, str)
        try:
            updates[name] = conv(value)
        except (TypeError, ValueError):
            raise ConfigError(f"bad value for {key}: {value!r}") from None
    return replace(base, **updates)


def read_config_file(path) -> dict:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


@dataclass
class SweepTable:
    """Column arrays of one sweep, in grid order."""

    k0: np.ndarray
    E: np.ndarray
    R: np.ndarray
    T: np.ndarray
    neg_R: np.ndarray
    neg_T: np.ndarray
    neg_total: np.ndarray

    def rows(self):
        return zip(*(getattr(self, c) for c in COLUMNS))

    @property
    def n_bad(self) -> int:
        return int(np.count_nonzero(~np.isfinite(self.T)))


def _compute_chunk(config: SweepConfig, k0: np.ndarray):
    grid = scatter_many(config.params(), config.m, config.initial, k0)
    neg_R, neg_T, neg_total = negativities(grid.S_R, grid.S_T, config.combine_mode)
    return grid.E, grid.R, grid.T, neg_R, neg_T, neg_total


def compute_sweep(config: SweepConfig, threads: Optional[int] = None) -> SweepTable:
    """Evaluate every grid point; chunks run concurrently and are gathered in order.

    Each point is computed independently of its chunk, so the table does not
    depend on ``threads``.
    """
    config.validate()
    k0 = config.grid()
    workers = max(1, int(threads or os.cpu_count() or 1))
    chunks = [c for c in np.array_split(k0, workers) if c.size]
    if len(chunks) == 1:
        parts = [_compute_chunk(config, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(lambda c: _compute_chunk(config, c), chunks))
    cols = [np.concatenate(col) for col in zip(*parts)]
    return SweepTable(k0, *cols)


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        return "nan"
    return format(float(x) + 0.0, ".17g")


def csv_text(table: SweepTable) -> str:
    lines = [",".join(COLUMNS)]
    lines.extend(",".join(_fmt(v) for v in row) for row in table.rows())
    return "\n".join(lines) + "\n"


def write_csv(table: SweepTable, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(csv_text(table))


def read_csv(path) -> SweepTable:
    data = np.genfromtxt(path, delimiter=",", names=True, dtype=float)
    return SweepTable(*(np.atleast_1d(data[c]) for c in COLUMNS))


def summarize(table: SweepTable) -> str:
    def peak(y):
        if not np.any(np.isfinite(y)):
            return "nan at k0=nan"
        i = int(np.nanargmax(y))
        return f"{y[i]:.6f} at k0={table.k0[i]:.6f}"

    return f"peak T={peak(table.T)}; peak neg_total={peak(table.neg_total)}; nan points={table.n_bad}"


def run_sweep(config: SweepConfig, threads: Optional[int] = None):
    """Compute, write the CSV (if ``config.output``), and return (table, summary line)."""
    table = compute_sweep(config, threads)
    if config.output:
        write_csv(table, config.output)
    return table, summarize(table)


# -- peak analysis ------------------------------------------------------------


def grid_maxima(y: np.ndarray) -> np.ndarray:
    """Indices of interior grid points not lower than either neighbour (nan-safe)."""
    y = np.asarray(y, dtype=float)
    mid = y[1:-1]
    ok = np.isfinite(mid) & (mid >= y[:-2]) & (mid >= y[2:]) & ((mid > y[:-2]) | (mid > y[2:]))
    return np.flatnonzero(ok) + 1


def resonances(k0: np.ndarray, y: np.ndarray, threshold: float, f: Optional[Callable[[float], float]] = None):
    """Local maxima of y(k0) exceeding ``threshold``, as (location, height) pairs.

    With ``f`` given, each grid maximum is refined by bounded scalar
    maximization of ``f`` between its two neighbours; this recovers narrow
    resonances whose apex falls between grid points.
    """
    found = []
    for i in grid_maxima(y):
        loc, height = float(k0[i]), float(y[i])
        if f is not None:
            res = minimize_scalar(lambda k: -f(k), bounds=(k0[i - 1], k0[i + 1]), method="bounded",
                                  options={"xatol": 1e-12})
            if -res.fun > height:
                loc, height = float(res.x), float(-res.fun)
        if height > threshold:
            found.append((loc, height))
    return found


def fwhm(k0: np.ndarray, y: np.ndarray) -> float:
    """Full width at half maximum of the global peak, by linear interpolation."""
    y = np.asarray(y, dtype=float)
    i = int(np.nanargmax(y))
    half = y[i] / 2.0
    lo = i
    while lo > 0 and y[lo] > half:
        lo -= 1
    hi = i
    while hi < len(y) - 1 and y[hi] > half:
        hi += 1

    def cross(a, b):
        if y[a] == y[b]:
            return k0[a]
        return k0[a] + (half - y[a]) * (k0[b] - k0[a]) / (y[b] - y[a])

    left = cross(lo, lo + 1) if y[lo] <= half else k0[lo]
    right = cross(hi - 1, hi) if y[hi] <= half else k0[hi]
    return float(right - left)


# -- figure presets -------------------------------------------------------------


@dataclass(frozen=True)
class Curve:
    name: str
    config: SweepConfig


def _curve(preset, model, m, initial, u_prime=10.0, tag_u=False):
    name = f"{preset}_{model}_m{m}_{initial}"
    if tag_u:
        name += f"_u{u_prime:g}"
    return Curve(name, SweepConfig(model=model, m=m, initial=initial, u_prime=u_prime))


FIGURES = {
    "fig4": [_curve("fig4", "chain", m, s) for m in (2, 5) for s in ("udd", "uuu")],
    "fig5": [_curve("fig5", "zpnr", m, s) for m in (2, 5) for s in ("udd", "uuu")],
    "fig6": [_curve("fig6", model, 0, "udd") for model in MODELS],
    "fig7": [_curve("fig7", model, m, "udd") for model in MODELS for m in (2, 5)],
    "fig8": [_curve("fig8", "zpnr", 2, "udd", u, tag_u=True) for u in (10.0, 100.0)],
}


def figure_curves(preset: str, overrides: Optional[dict] = None) -> list[Curve]:
    if preset not in FIGURES:
        raise ConfigError(f"unknown figure preset {preset!r}; choose from {sorted(FIGURES)}")
    curves = FIGURES[preset]
    if overrides:
        curves = [Curve(c.name, replace(c.config, **overrides)) for c in curves]
    return curves


def run_figure(preset: str, outdir, threads: Optional[int] = None, overrides: Optional[dict] = None):
    """Write one CSV per curve of ``preset`` into ``outdir``; return {name: (path, table, summary)}."""
    outdir = Path(outdir)
    results = {}
    for curve in figure_curves(preset, overrides):
        path = outdir / f"{curve.name}.csv"
        cfg = replace(curve.config, output=str(path)).validate()
        table, summary = run_sweep(cfg, threads)
        results[curve.name] = (path, table, summary)
    return results
