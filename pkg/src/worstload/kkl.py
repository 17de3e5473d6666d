"""Karhunen-Loeve ensemble for the exponential covariance exp(-|x1 - x2| / b)
on (-a, a), mapped onto the OUTER boundary by arc length, and the expected
energy concentration of the resulting random Dirichlet loads.

Two families of eigenpairs (c = 1/b):

    cosine:  c - g tan(g a) = 0,   phi(x) = cos(g x) / sqrt(a + sin(2 g a) / (2 g))
    sine:    g + c tan(g a) = 0,   phi(x) = sin(g x) / sqrt(a - sin(2 g a) / (2 g))

with eigenvalue mu = 2 c / (g^2 + c^2) in both cases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .concentration import energies
from .errors import UndefinedRatioError
from .fem import OMEGA, DirichletSolver, assemble_stiffness
from .mesh import Mesh

COSINE = "cos"
SINE = "sin"

DEFAULT_MODE_RATIO = 1e-3


def _root_function(a, c, family):
    """Tangent-free forms of the two root equations and their derivatives.

    Multiplying through by cos(g a) removes the poles, leaving one sign change
    per bracket.
    """
    if family == COSINE:
        def f(g):
            return c * math.cos(g * a) - g * math.sin(g * a)

        def df(g):
            return -(c * a + 1) * math.sin(g * a) - g * a * math.cos(g * a)
    elif family == SINE:
        def f(g):
            return g * math.cos(g * a) + c * math.sin(g * a)

        def df(g):
            return (1 + c * a) * math.cos(g * a) - g * a * math.sin(g * a)
    else:
        raise ValueError(f"unknown family {family!r}")
    return f, df


def _bracket(a, n, family):
    if family == COSINE:
        return (n - 1) * math.pi / a, (n - 0.5) * math.pi / a
    return (n - 0.5) * math.pi / a, n * math.pi / a


def _safeguarded_newton(f, df, lo, hi, xtol, maxiter=200):
    """Newton iteration that falls back to bisection whenever a step leaves
    the current bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise ArithmeticError(f"no sign change on [{lo}, {hi}]")
    x = 0.5 * (lo + hi)
    for _ in range(maxiter):
        fx = f(x)
        if fx == 0:
            return x
        if (fx < 0) == (flo < 0):
            lo = x
        else:
            hi = x
        d = df(x)
        x_new = x - fx / d if d != 0 else 0.5 * (lo + hi)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= xtol * abs(x) or hi - lo <= xtol * abs(x):
            return x_new
        x = x_new
    raise ArithmeticError("root iteration did not converge")


def _root(a, c, n, family):
    f, df = _root_function(a, c, family)
    lo, hi = _bracket(a, n, family)
    return _safeguarded_newton(f, df, lo, hi, xtol=1e-15)


def solve_transcendental(a, c, count, family=COSINE):
    """First ``count`` positive roots of the cosine or sine family equation.

    Root n lies in ((n - 1) pi / a, (n - 1/2) pi / a) for the cosine family
    and ((n - 1/2) pi / a, n pi / a) for the sine family.
    """
    if a <= 0 or c <= 0:
        raise ValueError("a and c must be positive")
    if count < 0:
        raise ValueError("count must be non-negative")
    _root_function(a, c, family)
    return np.array([_root(a, c, n, family) for n in range(1, count + 1)])


@dataclass(frozen=True, eq=False)
class KklEnsemble:
    a: float
    b: float
    gamma_cos: np.ndarray
    gamma_sin: np.ndarray

    @property
    def c(self):
        return 1.0 / self.b

    @property
    def mu_cos(self):
        return 2 * self.c / (self.gamma_cos ** 2 + self.c ** 2)

    @property
    def mu_sin(self):
        return 2 * self.c / (self.gamma_sin ** 2 + self.c ** 2)

    def gamma(self, family, n):
        roots = self.gamma_cos if family == COSINE else self.gamma_sin
        if not 1 <= n <= len(roots):
            raise IndexError(f"{family} mode {n} is outside the truncation 1..{len(roots)}")
        return float(roots[n - 1])

    def mu(self, family, n):
        g = self.gamma(family, n)
        return 2 * self.c / (g * g + self.c ** 2)

    def norm_constant(self, family, n):
        g = self.gamma(family, n)
        sign = 1.0 if family == COSINE else -1.0
        return 1.0 / math.sqrt(self.a + sign * math.sin(2 * g * self.a) / (2 * g))

    def eigenfunction(self, family, n, x):
        """Normalized eigenfunction n (1-based) of the family at points x."""
        g = self.gamma(family, n)
        if g <= 0:
            raise ValueError("eigenfunction parameter must be positive")
        trig = np.cos if family == COSINE else np.sin
        return self.norm_constant(family, n) * trig(g * np.asarray(x, float))

    def modes(self):
        """(family, n, mu) for every retained mode, cosine family first."""
        out = [(COSINE, n, float(m)) for n, m in enumerate(self.mu_cos, start=1)]
        out += [(SINE, n, float(m)) for n, m in enumerate(self.mu_sin, start=1)]
        return out


def default_truncation(a, b, ratio=DEFAULT_MODE_RATIO, limit=100000):
    """Mode counts keeping mu_n / mu_1 >= ratio in each family."""
    c = 1.0 / b
    mu1 = 2 * c / (_root(a, c, 1, COSINE) ** 2 + c ** 2)
    counts = []
    for family in (COSINE, SINE):
        n = 0
        while n < limit:
            g = _root(a, c, n + 1, family)
            if 2 * c / (g * g + c * c) < ratio * mu1:
                break
            n += 1
        counts.append(n)
    return tuple(counts)


def build_ensemble(a, b, n_cos=None, n_sin=None) -> KklEnsemble:
    """Closed-form eigenpairs; counts default to the mu_n / mu_1 >= 1e-3 rule."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if n_cos is None or n_sin is None:
        d_cos, d_sin = default_truncation(a, b)
        n_cos = d_cos if n_cos is None else n_cos
        n_sin = d_sin if n_sin is None else n_sin
    c = 1.0 / b
    return KklEnsemble(a=float(a), b=float(b),
                       gamma_cos=solve_transcendental(a, c, n_cos, COSINE),
                       gamma_sin=solve_transcendental(a, c, n_sin, SINE))


def map_to_boundary(mesh: Mesh, param, ensemble: KklEnsemble, index, family):
    """Nodal values phi(s(node)) on the OUTER loop (anchor first)."""
    return ensemble.eigenfunction(family, index, param.s)


@dataclass(eq=False)
class RandomLoadSpec:
    mean: np.ndarray            # per OUTER node, anchor first
    ensemble: KklEnsemble
    scale: float = 1.0          # multiplies every sqrt(mu_n)

    def __post_init__(self):
        self.mean = np.asarray(self.mean, float)


@dataclass(eq=False)
class ModeEnergy:
    family: str
    n: int
    mu: float
    energy_omega: float
    energy_omegastar: float


@dataclass(eq=False)
class KklResult:
    p_bar: float
    energy_omega: float         # E_N(omega)
    energy_omegastar: float     # E_N(omega*)
    mean_energy_omega: float
    mean_energy_omegastar: float
    modes: list = field(default_factory=list)
    mean_field: np.ndarray = None
    mode_fields: np.ndarray = None  # (n_nodes, n_modes), unscaled

    @property
    def n_cos(self):
        return sum(m.family == COSINE for m in self.modes)

    @property
    def n_sin(self):
        return sum(m.family == SINE for m in self.modes)


def mode_loads(mesh: Mesh, spec: RandomLoadSpec):
    """OUTER nodal data of every retained mode, columns in ``ensemble.modes()`` order."""
    param = mesh.parametrization
    ens = spec.ensemble
    cols = [map_to_boundary(mesh, param, ens, n, fam) for fam, n, _ in ens.modes()]
    if not cols:
        return np.zeros((len(param), 0))
    return np.column_stack(cols)


def expected_concentration(mesh: Mesh, material, spec: RandomLoadSpec, solver=None) -> KklResult:
    """Truncated expected energy concentration P_N = E_N(omega) / E_N(omega*).

    Uses <psi_m psi_n> = delta_mn, so only one Dirichlet solve per mode is
    needed and nothing is sampled.
    """
    if solver is None:
        solver = DirichletSolver(mesh, material)
    modes = spec.ensemble.modes()
    if not np.any(spec.mean) and not modes:
        raise UndefinedRatioError("zero mean load and no fluctuation modes")
    K_omega = assemble_stiffness(mesh, material, OMEGA)
    u_mean = solver.solve(spec.mean)
    u_modes = solver.solve(mode_loads(mesh, spec))
    ew_mean, es_mean = energies(mesh, material, u_mean, solver.K, K_omega)
    ew_modes, es_modes = energies(mesh, material, u_modes, solver.K, K_omega)
    weights = spec.scale ** 2 * np.array([mu for _, _, mu in modes])
    e_w = float(ew_mean + np.dot(weights, ew_modes))
    e_s = float(es_mean + np.dot(weights, es_modes))
    if e_s <= 0:
        raise UndefinedRatioError("random load ensemble stores no elastic energy")
    table = [ModeEnergy(fam, n, mu, float(w), float(s))
             for (fam, n, mu), w, s in zip(modes, ew_modes, es_modes)]
    return KklResult(p_bar=e_w / e_s, energy_omega=e_w, energy_omegastar=e_s,
                     mean_energy_omega=float(ew_mean), mean_energy_omegastar=float(es_mean),
                     modes=table, mean_field=u_mean, mode_fields=u_modes)


def monte_carlo_energies(mesh: Mesh, material, spec: RandomLoadSpec, samples=2000,
                         rng=None, solver=None):
    """Sample means of the energies in omega and omega* for truncated random loads
    with independent standard normal coefficients."""
    rng = np.random.default_rng(rng)
    if solver is None:
        solver = DirichletSolver(mesh, material)
    K_omega = assemble_stiffness(mesh, material, OMEGA)
    u_mean = solver.solve(spec.mean)
    u_modes = solver.solve(mode_loads(mesh, spec)).reshape(mesh.n_nodes, -1)
    amp = spec.scale * np.sqrt([mu for _, _, mu in spec.ensemble.modes()])
    xi = rng.standard_normal((u_modes.shape[1], samples))
    u = u_mean[:, None] + u_modes @ (amp[:, None] * xi)
    e_w, e_s = energies(mesh, material, u, solver.K, K_omega)
    return float(np.mean(e_w)), float(np.mean(e_s))
