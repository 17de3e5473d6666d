"""Run configuration: INI files with [run], [mesh], [material], [kkl],
[solver] and [output] sections. Bundled presets live in ``presets/``."""
from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .harmonic_basis import DEFAULT_MEMORY_BUDGET_MB
from .mesh import Mesh, generate_disk_mesh, generate_square_hole_mesh, load_mesh

OUT_ENV = "WORSTLOAD_OUT"
DEFAULT_OUT = "worstload_out"
GENERATORS = ("disk", "square_hole")


@dataclass
class MeanLoadRule:
    """OUTER nodes inside the box [xmin, xmax] x [ymin, ymax] get ``value``."""
    xmin: float
    ymin: float
    xmax: float
    ymax: float
    value: float

    def text(self):
        return f"box {self.xmin:g} {self.ymin:g} {self.xmax:g} {self.ymax:g} {self.value:g}"


@dataclass
class RunConfig:
    name: str = "run"
    note: str = ""
    approximate_layout: bool = False
    mesh_file: Path | None = None
    generator: str | None = None
    generator_args: dict = field(default_factory=dict)
    omega: str = "tagged"                 # "tagged" or "all"
    matrix_modulus: float = 1.0
    inclusion_modulus: float = 1000.0
    b: float | None = None
    n_cos: int | None = None
    n_sin: int | None = None
    mean_load: list = field(default_factory=list)
    cluster_tol: float = 1e-6
    memory_budget_mb: float = DEFAULT_MEMORY_BUDGET_MB
    output_dir: Path | None = None

    @property
    def has_kkl(self):
        return self.b is not None

    def validate(self):
        if (self.mesh_file is None) == (self.generator is None):
            raise ConfigError("exactly one mesh source (file or generator) is required")
        if self.generator is not None and self.generator not in GENERATORS:
            raise ConfigError(f"unknown generator {self.generator!r}; choose from {GENERATORS}")
        if self.omega not in ("tagged", "all"):
            raise ConfigError("mesh.omega must be 'tagged' or 'all'")
        if self.matrix_modulus <= 0 or self.inclusion_modulus <= 0:
            raise ConfigError("shear moduli must be positive")
        if self.cluster_tol <= 0 or self.memory_budget_mb <= 0:
            raise ConfigError("tolerances and budgets must be positive")
        if self.b is not None and self.b <= 0:
            raise ConfigError("kkl.b must be positive")
        for n in (self.n_cos, self.n_sin):
            if n is not None and n < 0:
                raise ConfigError("mode counts must be non-negative")
        return self

    def build_mesh(self) -> Mesh:
        if self.mesh_file is not None:
            mesh = load_mesh(self.mesh_file)
        else:
            args = dict(self.generator_args)
            try:
                if self.generator == "disk":
                    mesh = generate_disk_mesh(args.pop("outer_radius", 1.0),
                                              args.pop("omega_radius"), args.pop("target_h"))
                else:
                    mesh = generate_square_hole_mesh(
                        args.pop("side"), args.pop("hole_radius"), args.pop("omega_radius"),
                        args.pop("inclusions", []), args.pop("target_h"))
            except KeyError as exc:
                raise ConfigError(f"generator {self.generator!r} needs parameter {exc}")
            if args:
                raise ConfigError(f"unused generator parameters: {sorted(args)}")
        if self.omega == "all":
            mesh = mesh.with_omega(True)
        return mesh

    def mean_values(self, mesh: Mesh):
        """Mean boundary displacement at the OUTER nodes (anchor first)."""
        xy = mesh.nodes[mesh.outer_nodes]
        g = np.zeros(len(xy))
        for r in self.mean_load:
            inside = ((xy[:, 0] >= r.xmin) & (xy[:, 0] <= r.xmax)
                      & (xy[:, 1] >= r.ymin) & (xy[:, 1] <= r.ymax))
            g[inside] = r.value
        return g


def _float(sec, key, default=None):
    if key not in sec:
        return default
    try:
        return float(sec[key])
    except ValueError:
        raise ConfigError(f"[{sec.name}] {key} must be a number, got {sec[key]!r}")


def _int(sec, key):
    if key not in sec or sec[key].strip().lower() in ("", "auto"):
        return None
    try:
        return int(sec[key])
    except ValueError:
        raise ConfigError(f"[{sec.name}] {key} must be an integer or 'auto'")


def _circles(text):
    out = []
    for item in filter(None, (s.strip() for s in text.replace("\n", ";").split(";"))):
        try:
            x, y, r = (float(v) for v in item.split())
        except ValueError:
            raise ConfigError(f"inclusion entry {item!r} must be 'x y r'")
        out.append(((x, y), r, "I"))
    return out


def _mean_rules(text):
    rules = []
    for line in filter(None, (s.strip() for s in text.splitlines())):
        parts = line.split()
        if len(parts) != 6 or parts[0] != "box":
            raise ConfigError(f"mean_load entry {line!r} must be 'box xmin ymin xmax ymax value'")
        try:
            rules.append(MeanLoadRule(*(float(v) for v in parts[1:])))
        except ValueError:
            raise ConfigError(f"mean_load entry {line!r} has a non-numeric field")
    return rules


def parse_config(text, base_dir=".", overrides=()) -> RunConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc))
    for item in overrides:
        key, sep, value = item.partition("=")
        section, dot, option = key.strip().partition(".")
        if not sep or not dot:
            raise ConfigError(f"override {item!r} must look like section.key=value")
        if not cp.has_section(section):
            cp.add_section(section)
        cp[section][option] = value.strip()
    known = {"run", "mesh", "material", "kkl", "solver", "output"}
    unknown = set(cp.sections()) - known
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    for s in known:
        if not cp.has_section(s):
            cp.add_section(s)
    base_dir = Path(base_dir)
    cfg = RunConfig()
    run, mesh, mat, kkl, solver, output = (cp[s] for s in
                                           ("run", "mesh", "material", "kkl", "solver", "output"))
    cfg.name = run.get("name", cfg.name)
    cfg.note = run.get("note", "")
    try:
        cfg.approximate_layout = run.getboolean("approximate_layout", False)
    except ValueError:
        raise ConfigError("[run] approximate_layout must be yes/no")

    if "file" in mesh:
        cfg.mesh_file = base_dir / mesh["file"]
    if "generator" in mesh:
        cfg.generator = mesh["generator"].strip()
        for key in ("outer_radius", "omega_radius", "target_h", "side", "hole_radius"):
            if key in mesh:
                cfg.generator_args[key] = _float(mesh, key)
        if "inclusions" in mesh:
            cfg.generator_args["inclusions"] = _circles(mesh["inclusions"])
    cfg.omega = mesh.get("omega", "tagged").strip()

    cfg.matrix_modulus = _float(mat, "matrix", cfg.matrix_modulus)
    cfg.inclusion_modulus = _float(mat, "inclusion", cfg.inclusion_modulus)

    cfg.b = _float(kkl, "b")
    cfg.n_cos = _int(kkl, "n_cos")
    cfg.n_sin = _int(kkl, "n_sin")
    cfg.mean_load = _mean_rules(kkl.get("mean_load", ""))

    cfg.cluster_tol = _float(solver, "cluster_tol", cfg.cluster_tol)
    cfg.memory_budget_mb = _float(solver, "memory_budget_mb", cfg.memory_budget_mb)
    if "dir" in output:
        cfg.output_dir = Path(output["dir"])
    return cfg.validate()


def preset_names():
    root = resources.files("worstload") / "presets"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".ini"))


def load_config(source, overrides=()) -> RunConfig:
    """Load a config file, or a bundled preset by name (``disk``, ``geo1`` ...)."""
    path = Path(source)
    if not path.exists():
        if str(source) in preset_names():
            path = Path(str(resources.files("worstload") / "presets" / f"{source}.ini"))
        else:
            raise ConfigError(f"no config file or preset named {source!r}")
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(str(exc))
    return parse_config(text, base_dir=path.parent, overrides=overrides)


def resolve_output_dir(cfg: RunConfig, cli_out=None) -> Path:
    if cli_out is not None:
        return Path(cli_out)
    if cfg.output_dir is not None:
        return cfg.output_dir
    return Path(os.environ.get(OUT_ENV, DEFAULT_OUT))
