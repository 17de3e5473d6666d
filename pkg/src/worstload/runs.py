"""Run orchestration for the CLI: worst-case load, KKL expected concentration
and their comparison. Each run writes its report files into an output dir."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .concentration import concentration_of, energies, worst_case
from .config import RunConfig
from .errors import ConfigError
from .fem import DirichletSolver, gradient_and_stress, material_field
from .harmonic_basis import build_basis
from .kkl import RandomLoadSpec, build_ensemble, expected_concentration
from .mesh import Mesh
from .output import (read_quantities, write_quantities, write_table, write_text,
                     write_vtk)

logger = logging.getLogger(__name__)

BOUND_TOL = 1e-10
INEQUALITY_TOL = 1e-8
APPROX_FLAG = "approximate inclusion layout"


@dataclass
class Report:
    name: str
    mesh_stats: dict
    V: float | None = None
    spectrum: np.ndarray | None = None
    degenerate: bool | None = None
    p_bar: float | None = None
    modes: list = field(default_factory=list)
    approximate_layout: bool = False
    elapsed: float = 0.0
    files: list = field(default_factory=list)

    @property
    def ratio(self):
        if self.V is None or self.p_bar is None:
            return None
        return self.p_bar / self.V

    @property
    def inequality_holds(self):
        if self.V is None or self.p_bar is None:
            return None
        return self.p_bar <= self.V + INEQUALITY_TOL


def mesh_stats(mesh: Mesh):
    return {
        "n_nodes": mesh.n_nodes,
        "n_elements": mesh.n_elements,
        "n_tris": len(mesh.tris),
        "n_quads": len(mesh.quads),
        "n_outer_nodes": len(mesh.outer_nodes),
        "n_clamped_nodes": len(mesh.clamped_nodes),
        "half_perimeter_a": mesh.parametrization.a,
        "area_total": mesh.region_area(np.ones(mesh.n_elements, bool)),
        "area_omega": mesh.region_area(mesh.element_in_omega),
    }


def _clamped(spectrum):
    return np.clip(spectrum, 0.0, 1.0)


def _decay_lines(spectrum):
    lam = _clamped(spectrum)
    if len(lam) == 0 or lam[0] <= 0:
        return ["(empty spectrum)"]
    ks = sorted({k for k in range(1, min(len(lam), 10) + 1)}
                | {2 ** j for j in range(int(np.log2(len(lam))) + 1)})
    return [f"k={k:<5d} lambda_k={lam[k - 1]:.6e}  lambda_k/V={lam[k - 1] / lam[0]:.3e}"
            for k in ks]


def _field_files(out: Path, prefix, mesh, c, u, label):
    strain, stress = gradient_and_stress(mesh, c, u)
    names = [f"{prefix}_u.vtk", f"{prefix}_strain.vtk", f"{prefix}_stress.vtk"]
    write_vtk(out / names[0], mesh, f"{prefix}_u", u, "point", f"{label} displacement")
    write_vtk(out / names[1], mesh, f"{prefix}_strain", strain, "cell", f"{label} |grad u|")
    write_vtk(out / names[2], mesh, f"{prefix}_stress", stress, "cell", f"{label} |c grad u|")
    return names


class _Setup:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.mesh = cfg.build_mesh()
        try:
            self.c = material_field(self.mesh, cfg.matrix_modulus, cfg.inclusion_modulus)
        except ValueError as exc:
            raise ConfigError(str(exc))
        self.solver = DirichletSolver(self.mesh, self.c)


def _worst(setup: _Setup, out: Path, report: Report):
    cfg, mesh, c = setup.cfg, setup.mesh, setup.c
    basis = build_basis(mesh, c, memory_budget_mb=cfg.memory_budget_mb, solver=setup.solver)
    res = worst_case(mesh, c, cluster_tol=cfg.cluster_tol, basis=basis)
    lam = res.spectrum
    in_bounds = bool(np.all((lam >= -BOUND_TOL) & (lam <= 1 + BOUND_TOL)))
    if not in_bounds:
        logger.warning("eigenvalues outside [0, 1]: min %.3e max %.3e", lam.min(), lam.max())
    e_w, e_s = energies(mesh, c, res.worst_field, K_star=setup.solver.K)
    report.V = float(np.clip(res.V, 0.0, 1.0))
    report.spectrum = lam
    report.degenerate = res.degenerate

    rows = [("V", report.V), ("V_unclamped", res.V), ("n_basis", len(basis)),
            ("n_eigenvalues", len(lam)), ("lambda_2", _clamped(lam)[1] if len(lam) > 1 else 0.0),
            ("degenerate", res.degenerate), ("degenerate_cluster_size", len(res.degenerate_cluster)),
            ("constants_deflated", res.deflated), ("spectrum_in_bounds", in_bounds),
            ("worst_energy_omegastar", float(e_s)), ("worst_energy_omega", float(e_w)),
            ("rayleigh_ratio", float(e_w / e_s))]
    rows += list(report.mesh_stats.items())
    write_quantities(out / "worst.csv", rows + [("elapsed_s", report.elapsed)])
    write_table(out / "spectrum.csv", ["k", "lambda_k"],
                [(k, v) for k, v in enumerate(_clamped(lam), start=1)])
    param = mesh.parametrization
    xy = mesh.nodes[param.nodes]
    write_table(out / "worst_trace.csv", ["k", "node", "s", "x", "y", "g", "traction"],
                [(k, int(n), s, x, y, g, t) for k, (n, s, (x, y), g, t) in
                 enumerate(zip(param.nodes, param.s, xy, res.worst_trace, res.worst_traction))])
    notes = []
    if res.degenerate:
        notes.append(f"top eigenvalue is degenerate ({len(res.degenerate_cluster) + 1} "
                     "eigenvalues within cluster tolerance): the worst-case load is not unique")
    if cfg.approximate_layout:
        notes.append(f"NOTE: {APPROX_FLAG}")
    write_text(out / "worst.txt", f"worst-case load: {cfg.name}", rows,
               [("spectrum decay", _decay_lines(lam)), ("notes", notes or ["none"])])
    report.files += ["worst.csv", "worst.txt", "spectrum.csv", "worst_trace.csv"]
    report.files += _field_files(out, "worst", mesh, c, res.worst_field, "worst-case")
    return res


def _kkl(setup: _Setup, out: Path, report: Report):
    cfg, mesh, c = setup.cfg, setup.mesh, setup.c
    if not cfg.has_kkl:
        raise ConfigError("config has no [kkl] section with a correlation length b")
    a = mesh.parametrization.a
    ens = build_ensemble(a, cfg.b, cfg.n_cos, cfg.n_sin)
    mean = cfg.mean_values(mesh)
    res = expected_concentration(mesh, c, RandomLoadSpec(mean, ens), solver=setup.solver)
    report.p_bar = res.p_bar
    report.modes = res.modes
    rows = [("P_bar_N", res.p_bar), ("E_N_omega", res.energy_omega),
            ("E_N_omegastar", res.energy_omegastar),
            ("mean_energy_omega", res.mean_energy_omega),
            ("mean_energy_omegastar", res.mean_energy_omegastar)]
    if np.any(mean):
        rows.append(("P_mean", float(concentration_of(mesh, c, mean, solver=setup.solver))))
    rows += [("a", a), ("b", cfg.b), ("n_cos", res.n_cos), ("n_sin", res.n_sin),
             ("mu_1", ens.mu_cos[0] if len(ens.mu_cos) else 0.0),
             ("approximate_layout", cfg.approximate_layout)]
    if report.V is None and (out / "worst.csv").exists():
        prev = read_quantities(out / "worst.csv")
        if "V" in prev:
            report.V = float(prev["V"])
    if report.V is not None:
        rows += [("V", report.V), ("ratio_P_bar_N_over_V", report.ratio),
                 ("inequality_holds", report.inequality_holds)]
    rows += list(report.mesh_stats.items())
    write_quantities(out / "kkl.csv", rows + [("elapsed_s", report.elapsed)])
    write_table(out / "modes.csv", ["family", "n", "mu", "energy_omega", "energy_omegastar"],
                [(m.family, m.n, m.mu, m.energy_omega, m.energy_omegastar) for m in res.modes])
    notes = [f"NOTE: {APPROX_FLAG}"] if cfg.approximate_layout else []
    notes += [f"mean load: {r.text()}" for r in cfg.mean_load] or ["mean load: zero"]
    write_text(out / "kkl.txt", f"expected energy concentration: {cfg.name}", rows,
               [("notes", notes)])
    report.files += ["kkl.csv", "kkl.txt", "modes.csv"]
    if res.mean_energy_omegastar > 0:
        u = res.mean_field / np.sqrt(res.mean_energy_omegastar)
        report.files += _field_files(out, "mean", mesh, c, u, "ensemble mean")
    return res


def _start(cfg, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    setup = _Setup(cfg)
    report = Report(name=cfg.name, mesh_stats=mesh_stats(setup.mesh),
                    approximate_layout=cfg.approximate_layout)
    return out, setup, report


def run_worst_case(cfg: RunConfig, out_dir) -> Report:
    t0 = time.perf_counter()
    out, setup, report = _start(cfg, out_dir)
    _worst(setup, out, report)
    report.elapsed = time.perf_counter() - t0
    _rewrite_elapsed(out / "worst.csv", report.elapsed)
    return report


def run_kkl(cfg: RunConfig, out_dir) -> Report:
    t0 = time.perf_counter()
    out, setup, report = _start(cfg, out_dir)
    _kkl(setup, out, report)
    report.elapsed = time.perf_counter() - t0
    _rewrite_elapsed(out / "kkl.csv", report.elapsed)
    return report


def run_compare(cfg: RunConfig, out_dir) -> Report:
    t0 = time.perf_counter()
    out, setup, report = _start(cfg, out_dir)
    _worst(setup, out, report)
    _kkl(setup, out, report)
    report.elapsed = time.perf_counter() - t0
    rows = [("V", report.V), ("P_bar_N", report.p_bar), ("ratio_P_bar_N_over_V", report.ratio),
            ("inequality_holds", report.inequality_holds), ("degenerate", report.degenerate),
            ("n_cos", sum(m.family == "cos" for m in report.modes)),
            ("n_sin", sum(m.family == "sin" for m in report.modes)),
            ("approximate_layout", cfg.approximate_layout)]
    rows += list(report.mesh_stats.items())
    write_quantities(out / "compare.csv", rows + [("elapsed_s", report.elapsed)])
    status = "holds" if report.inequality_holds else "VIOLATED"
    notes = [f"P_bar_N <= V: {status}"]
    if cfg.approximate_layout:
        notes.append(f"NOTE: {APPROX_FLAG}")
    write_text(out / "compare.txt", f"worst case vs expected concentration: {cfg.name}", rows,
               [("spectrum decay", _decay_lines(report.spectrum)), ("notes", notes)])
    report.files += ["compare.csv", "compare.txt"]
    _rewrite_elapsed(out / "worst.csv", report.elapsed)
    _rewrite_elapsed(out / "kkl.csv", report.elapsed)
    return report


def _rewrite_elapsed(path: Path, elapsed):
    lines = path.read_text().splitlines()
    lines = [f"elapsed_s,{elapsed:.3f}" if ln.startswith("elapsed_s,") else ln for ln in lines]
    path.write_text("\n".join(lines) + "\n")
