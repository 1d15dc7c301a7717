"""Figure datasets, parameter scans and provenance-stamped CSV export."""
from __future__ import annotations

import csv
import json
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ExperimentConfig
from .dynamics import Regime, build_transfer_array, evolve
from .effective import bell_spectral_analysis, effective_hamiltonian, write_report
from .pdf import nested_weights, pdf_full
from .repeater import fidelity_trajectory, iterate_purification, distillable
from .states import bell_state, concurrence, fidelity, purity, validate

__all__ = [
    "FIGURES",
    "Dataset",
    "write_dataset",
    "run_figure",
    "run_scan",
    "run_pdf",
    "run_repeater",
    "run_effective",
    "evolved_state",
]

FIGURES = ("fig1", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b")
FIG_TIMES = np.linspace(0.0, 10.0, 200)
FIG3_TEMPERATURES = np.linspace(0.0, 10.0, 101)


def _version():
    from . import __version__
    return __version__


class Dataset:
    """Column header, numeric rows and provenance metadata for one CSV file."""

    def __init__(self, name, header, rows, metadata):
        self.name = name
        self.header = list(header)
        self.rows = np.asarray(rows, dtype=float).reshape(-1, len(self.header))
        self.metadata = dict(metadata)

    def column(self, key):
        return self.rows[:, self.header.index(key)]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, Regime):
        return obj.value
    return obj


def write_dataset(ds: Dataset, out_dir) -> Path:
    """``<name>.csv`` with ``#`` provenance lines, plus ``<name>.json``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    meta = _jsonable({"version": _version(), **ds.metadata})
    path = out_dir / f"{ds.name}.csv"
    with path.open("w", newline="") as fh:
        fh.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        w = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
        w.writerow(ds.header)
        for row in ds.rows:
            w.writerow([repr(float(x)) for x in row])
    path.with_suffix(".json").write_text(json.dumps(meta, indent=2, sort_keys=True))
    return path


def evolved_state(cfg: ExperimentConfig, t: float, **bath_changes) -> np.ndarray:
    bath = cfg.bath.replace(**bath_changes) if bath_changes else cfg.bath
    return evolve(cfg.initial_state(), build_transfer_array(t, bath, cfg.geometry))


def _geometry_for(cfg, regime):
    return replace(cfg, regime=regime.value).geometry


def _base_meta(cfg, name, geom, **extra):
    meta = cfg.as_metadata()
    meta.update(figure=name, regime=geom.regime.value, positions=list(geom.positions))
    meta.update(extra)
    return meta


def _fig1(cfg):
    geom = _geometry_for(cfg, Regime.LOCALIZED)
    series = [(4.0, 0.0), (0.0, 2.0), (4.0, 2.0)]
    cols = [FIG_TIMES]
    for T, alpha in series:
        cols.append(fidelity_trajectory(2, FIG_TIMES, cfg.bath.replace(T=T, alpha=alpha), geom)[:, 1])
    header = ["t"] + [f"F_T{T:g}_alpha{a:g}" for T, a in series]
    return [Dataset("fig1", header, np.column_stack(cols),
                    _base_meta(cfg, "fig1", geom, bell=2, series=series))]


def _fig2(cfg, name, regime):
    geom = _geometry_for(cfg, regime)
    alphas = (0.0, 0.5, 1.0)
    rho0 = cfg.initial_state()
    rows = []
    for t in FIG_TIMES:
        row = [t]
        for alpha in alphas:
            bath = cfg.bath.replace(T=5.0, alpha=alpha)
            row.append(concurrence(evolve(rho0, build_transfer_array(t, bath, geom)), strict=False))
        rows.append(row)
    header = ["t"] + [f"C_alpha{a:g}" for a in alphas]
    return [Dataset(name, header, rows, _base_meta(cfg, name, geom, T=5.0, alphas=alphas))]


def _fig3(cfg, name, regime):
    geom = _geometry_for(cfg, regime)
    rho0 = cfg.initial_state()
    rows = []
    for T in FIG3_TEMPERATURES:
        bath = cfg.bath.replace(T=T, alpha=0.2)
        rho = evolve(rho0, build_transfer_array(5.0, bath, geom))
        rows.append([T, *nested_weights(rho, strict=False).weights])
    return [Dataset(name, ["T", "w1", "w2", "w3", "w4"], rows,
                    _base_meta(cfg, name, geom, t=5.0, alpha=0.2))]


def _pdf_datasets(cfg, name, geom, t, T, alpha):
    bath = cfg.bath.replace(T=T, alpha=alpha)
    rho = evolve(cfg.initial_state(), build_transfer_array(t, bath, geom))
    full = pdf_full(rho, cfg.n_samples, cfg.n_bins, cfg.seed, cfg.workers, strict=False)
    h = full.histogram
    meta = _base_meta(cfg, name, geom, t=t, T=T, alpha=alpha,
                      weights=list(full.decomposition.weights),
                      eigenvalues=list(full.decomposition.eigenvalues),
                      concurrence=concurrence(rho, strict=False),
                      max_sample=h.max_sample)
    main = Dataset(name, ["bin_left", "bin_right", "density"],
                   np.column_stack([h.edges[:-1], h.edges[1:], h.density]), meta)
    comps = Dataset(f"{name}_components", ["bin_left", "bin_right", "P1", "P2", "P3", "P4"],
                    np.column_stack([h.edges[:-1], h.edges[1:]] + [c.density for c in full.components]),
                    meta)
    return [main, comps]


def run_figure(name: str, cfg: ExperimentConfig = None):
    """Datasets for one figure; parameters other than the figure's own come from ``cfg``."""
    cfg = cfg or ExperimentConfig()
    if name not in FIGURES:
        raise ValueError(f"unknown figure {name!r}; expected one of {', '.join(FIGURES)}")
    if name == "fig1":
        return _fig1(cfg)
    regime = Regime.LOCALIZED if name.endswith("a") else Regime.COLLECTIVE
    if name.startswith("fig2"):
        return _fig2(cfg, name, regime)
    if name.startswith("fig3"):
        return _fig3(cfg, name, regime)
    if name.startswith("fig4"):
        return _pdf_datasets(cfg, name, _geometry_for(cfg, regime), 10.0, 50.0, 0.2)
    # fig5: localized at two squeezing strengths
    alpha = 0.2 if name == "fig5a" else 0.0
    return _pdf_datasets(cfg, name, _geometry_for(cfg, Regime.LOCALIZED), 10.0, 20.0, alpha)


def _scan_columns(cfg):
    cols = []
    for q in cfg.quantities:
        if q == "weights":
            cols += ["w1", "w2", "w3", "w4"]
        elif q == "gamma":
            cols += [f"gamma_{j}{k}" for j in range(4) for k in range(j + 1, 4)]
        else:
            cols.append(q)
    return cols


def _scan_row(cfg, t, bath, rho0, bell):
    arr = build_transfer_array(t, bath, cfg.geometry)
    rho = evolve(rho0, arr)
    out = []
    for q in cfg.quantities:
        if q == "concurrence":
            out.append(concurrence(rho, strict=False))
        elif q == "fidelity":
            out.append(fidelity(rho, bell))
        elif q == "purity":
            out.append(purity(rho))
        elif q == "weights":
            out += list(nested_weights(rho, strict=False).weights)
        elif q == "gamma":
            out += [arr.gamma[j, k] for j in range(4) for k in range(j + 1, 4)]
        elif q == "min_eigenvalue":
            out.append(validate(rho).min_eigenvalue)
    return out


def run_scan(cfg: ExperimentConfig) -> Dataset:
    """Scan ``cfg.quantities`` along ``t`` (``cfg.times``) or ``T``/``alpha`` (``cfg.scan_values`` at ``cfg.t``)."""
    axis = cfg.scan_axis
    values = np.asarray(cfg.times if axis == "t" else cfg.scan_values, dtype=float)
    rho0 = cfg.initial_state()
    bell = bell_state(cfg.bell)
    rows = []
    for v in values:
        if axis == "t":
            rows.append([v, *_scan_row(cfg, v, cfg.bath, rho0, bell)])
        else:
            rows.append([v, *_scan_row(cfg, cfg.t, cfg.bath.replace(**{axis: v}), rho0, bell)])
    header = [axis] + _scan_columns(cfg)
    return Dataset("scan", header, rows, cfg.as_metadata())


def run_pdf(cfg: ExperimentConfig):
    return _pdf_datasets(cfg, "pdf", cfg.geometry, cfg.t, cfg.T, cfg.alpha)


def run_repeater(cfg: ExperimentConfig, rounds: int = 10):
    """Fidelity trajectory over ``cfg.times`` and purification of its final value."""
    table = fidelity_trajectory(cfg.bell, cfg.times, cfg.bath, cfg.geometry)
    traj = Dataset("repeater", ["t", "F"], table, cfg.as_metadata())
    out = [traj]
    if table.size and distillable(table[-1, 1]):
        seq = iterate_purification(table[-1, 1], rounds)
        out.append(Dataset("purification", ["round", "F"],
                           np.column_stack([np.arange(seq.size), seq]), cfg.as_metadata()))
    return out


def run_effective(cfg: ExperimentConfig, out_dir, drop_below: float = 1e-3) -> Path:
    rho = evolved_state(cfg, cfg.t)
    spec = bell_spectral_analysis(rho, strict=False)
    ham = effective_hamiltonian(spec, cfg.bath.beta, drop_below)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    meta = _jsonable({"version": _version(), **cfg.as_metadata()})
    return write_report(out_dir / "effective.json", spec, ham, meta)
