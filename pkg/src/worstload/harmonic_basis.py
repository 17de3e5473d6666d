"""Discrete c-harmonic fields driven by boundary hat functions."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .fem import DirichletSolver
from .mesh import Mesh

logger = logging.getLogger(__name__)

DEFAULT_MEMORY_BUDGET_MB = 1024


@dataclass(eq=False)
class HarmonicBasis:
    """Column i of ``fields`` is the harmonic extension of the hat function
    centered on OUTER node ``centers[i]``; holes are clamped."""

    mesh: Mesh
    material: np.ndarray
    fields: np.ndarray          # (n_nodes, n)
    centers: np.ndarray         # OUTER node indices, anchor first, counterclockwise
    solver: DirichletSolver

    def __len__(self):
        return self.fields.shape[1]


def build_basis(mesh: Mesh, material, memory_budget_mb=DEFAULT_MEMORY_BUDGET_MB,
                solver=None) -> HarmonicBasis:
    """One Dirichlet solve per OUTER node against a shared factorization."""
    if solver is None:
        solver = DirichletSolver(mesh, material)
    n = solver.n_outer
    if n < 3:
        raise ValueError(f"need at least 3 OUTER nodes, mesh has {n}")
    mb = mesh.n_nodes * n * 8 / 2**20
    if mb > memory_budget_mb:
        logger.warning("dense harmonic basis needs %.0f MB (budget %.0f MB)", mb, memory_budget_mb)
    fields = solver.solve(np.eye(n))
    return HarmonicBasis(mesh=mesh, material=np.asarray(material, float), fields=fields,
                         centers=np.asarray(solver.outer), solver=solver)


def expand(basis: HarmonicBasis, coeffs):
    """Field sum_i coeffs[i] * psi_i; its OUTER trace has nodal values coeffs."""
    coeffs = np.asarray(coeffs, float)
    if coeffs.shape[0] != len(basis):
        raise ValueError(f"expected {len(basis)} coefficients, got {coeffs.shape[0]}")
    return basis.fields @ coeffs
