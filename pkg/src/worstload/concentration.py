"""Worst-case boundary load: the top eigenpair of lambda A x = B x, where A and
B are the energy Gram matrices of the harmonic basis over the whole structure
and over omega."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, lapack, null_space, solve_triangular

from .errors import IndefiniteError, UndefinedRatioError
from .fem import (OMEGA, OMEGA_STAR, DirichletSolver, assemble_stiffness,
                  outer_edge_tractions)
from .harmonic_basis import HarmonicBasis, build_basis, expand
from .mesh import Mesh

CLUSTER_TOL = 1e-6


@dataclass(eq=False)
class ConcentrationResult:
    spectrum: np.ndarray        # descending, unclamped
    V: float
    coeffs: np.ndarray          # x with x^T A x = 1; also the OUTER nodal trace
    worst_field: np.ndarray
    worst_trace: np.ndarray
    worst_traction: np.ndarray  # per OUTER edge, see fem.outer_edge_tractions
    degenerate_cluster: np.ndarray
    eigenvectors: np.ndarray
    deflated: bool              # constants removed (no clamped hole)

    @property
    def degenerate(self):
        return len(self.degenerate_cluster) > 0


def assemble_gram(basis: HarmonicBasis, region=OMEGA_STAR):
    """M_ij = (psi_i, psi_j) in the energy of the region, symmetrized."""
    K = assemble_stiffness(basis.mesh, basis.material, region)
    support = np.unique(K.nonzero()[0])
    P = basis.fields[support]
    M = P.T @ (K[support][:, support] @ P)
    return 0.5 * (M + M.T)


def solve_generalized_eig(A, B):
    """Eigenpairs of lambda A x = B x by Cholesky reduction A = U^T U.

    Returns eigenvalues in descending order and A-orthonormal eigenvectors
    (columns).
    """
    A = np.asarray(A, float)
    B = np.asarray(B, float)
    U, info = lapack.dpotrf(A, lower=0, clean=1)
    if info > 0:
        raise IndefiniteError(int(info))
    if info < 0:
        raise ValueError(f"dpotrf: illegal argument {-info}")
    Y = solve_triangular(U, B, trans="T")            # U^-T B
    C = solve_triangular(U, Y.T, trans="T").T        # U^-T B U^-1
    C = 0.5 * (C + C.T)
    lam, Yv = eigh(C, driver="evd")
    lam, Yv = lam[::-1], Yv[:, ::-1]
    X = solve_triangular(U, Yv)
    return lam, X


def worst_case(mesh: Mesh, material, cluster_tol=CLUSTER_TOL, basis=None,
               memory_budget_mb=None) -> ConcentrationResult:
    if basis is None:
        kw = {} if memory_budget_mb is None else {"memory_budget_mb": memory_budget_mb}
        basis = build_basis(mesh, material, **kw)
    A = assemble_gram(basis, OMEGA_STAR)
    B = assemble_gram(basis, OMEGA)
    deflated = len(mesh.clamped_nodes) == 0
    if deflated:
        # constant loads store no energy when nothing is clamped
        Q = null_space(np.ones((1, len(basis))))
        lam, X = solve_generalized_eig(Q.T @ A @ Q, Q.T @ B @ Q)
        X = Q @ X
    else:
        lam, X = solve_generalized_eig(A, B)
    x = X[:, 0].copy()
    if x[np.argmax(np.abs(x))] < 0:
        x = -x
    field = expand(basis, x)
    V = float(lam[0])
    cluster = np.flatnonzero(lam[1:] > V - cluster_tol * max(abs(V), 1e-300)) + 1
    return ConcentrationResult(
        spectrum=lam, V=V, coeffs=x, worst_field=field, worst_trace=field[mesh.outer_nodes],
        worst_traction=outer_edge_tractions(mesh, material, field),
        degenerate_cluster=cluster, eigenvectors=X, deflated=deflated)


def energies(mesh: Mesh, material, u, K_star=None, K_omega=None):
    """(energy in omega, energy in omega*) of one field or of each column."""
    if K_star is None:
        K_star = assemble_stiffness(mesh, material, OMEGA_STAR)
    if K_omega is None:
        K_omega = assemble_stiffness(mesh, material, OMEGA)
    u = np.asarray(u, float)
    e_w = np.einsum("i...,i...->...", u, K_omega @ u)
    e_s = np.einsum("i...,i...->...", u, K_star @ u)
    return e_w, e_s


def concentration_of(mesh: Mesh, material, outer_values, solver=None):
    """Energy fraction P(g) stored in omega for OUTER Dirichlet data g.

    ``outer_values`` may hold several loads as columns; an array is returned
    in that case.
    """
    g = np.asarray(outer_values, float)
    if solver is None:
        solver = DirichletSolver(mesh, material)
    u = solver.solve(g)
    e_w, e_s = energies(mesh, material, u, K_star=solver.K)
    scale = np.abs(solver.K.diagonal()).max() * np.sum(g.reshape(len(g), -1) ** 2, axis=0)
    if np.any(np.atleast_1d(e_s) <= 1e-13 * scale) or not np.all(scale > 0):
        raise UndefinedRatioError("boundary load stores no elastic energy")
    return e_w / e_s
