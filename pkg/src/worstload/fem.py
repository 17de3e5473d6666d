"""Scalar antiplane-shear finite elements: div(c grad u) = 0.

Linear triangles and bilinear quadrilaterals (2x2 Gauss). Dirichlet data is
imposed on OUTER nodes, clamped holes get u = 0, and both are eliminated from
the system rather than penalized so that energy identities hold to roundoff.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import EmptyRegionError, SolverError
from .mesh import INCLUSION, Mesh

OMEGA = "omega"
OMEGA_STAR = "omega_star"

RESIDUAL_TOL = 1e-10

_GAUSS = np.array([-1.0, 1.0]) / np.sqrt(3.0)
_QREF = np.array([[-1, -1], [1, -1], [1, 1], [-1, 1]], float)


def material_field(mesh: Mesh, matrix=1.0, inclusion=1000.0, bounds=None):
    """Per-element shear modulus from the region tags."""
    c = np.where(mesh.element_region == INCLUSION, float(inclusion), float(matrix))
    check_material(c, mesh, bounds)
    return c


def check_material(c, mesh: Mesh, bounds=None):
    c = np.asarray(c, float)
    if c.shape != (mesh.n_elements,):
        raise ValueError(f"material has {c.size} values for {mesh.n_elements} elements")
    lo, hi = bounds if bounds is not None else (0.0, np.inf)
    if not np.all(c > 0):
        raise ValueError("shear modulus must be positive everywhere")
    if np.any(c < lo) or np.any(c > hi):
        raise ValueError(f"shear modulus outside declared bounds [{lo}, {hi}]")
    return c


def _q1_dshape(xi, eta):
    """Derivatives of the four bilinear shape functions w.r.t. (xi, eta), shape (2, 4)."""
    return 0.25 * np.array([_QREF[:, 0] * (1 + eta * _QREF[:, 1]),
                            _QREF[:, 1] * (1 + xi * _QREF[:, 0])])


def _tri_gradients(mesh):
    """Shape-function gradients (T, 3, 2) and areas (T,)."""
    p = mesh.nodes[mesh.tris]
    x, y = p[..., 0], p[..., 1]
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    d = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    area = 0.5 * (b[:, 0] * d[:, 1] - b[:, 1] * d[:, 0])
    grads = np.stack([b, d], axis=2) / (2 * area)[:, None, None]
    return grads, area


def _quad_gradients(mesh, xi, eta):
    """Physical shape-function gradients (Q, 4, 2) and det J (Q,) at one point."""
    dN = _q1_dshape(xi, eta)                              # (2, 4)
    X = mesh.nodes[mesh.quads]                            # (Q, 4, 2)
    J = np.einsum("rk,qkd->qrd", dN, X)                   # (Q, 2, 2)
    det = J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0]
    Jinv = np.linalg.inv(J)
    grads = np.einsum("qdr,rk->qkd", Jinv, dN)
    return grads, det


def element_matrices(mesh: Mesh, c):
    """Element stiffness blocks: (tri (T,3,3), quad (Q,4,4))."""
    c = np.asarray(c, float)
    nt = len(mesh.tris)
    ke_t = np.zeros((0, 3, 3))
    ke_q = np.zeros((0, 4, 4))
    if nt:
        g, area = _tri_gradients(mesh)
        ke_t = (c[:nt] * area)[:, None, None] * np.einsum("eid,ejd->eij", g, g)
    if len(mesh.quads):
        ke_q = np.zeros((len(mesh.quads), 4, 4))
        for xi in _GAUSS:
            for eta in _GAUSS:
                g, det = _quad_gradients(mesh, xi, eta)
                ke_q += (c[nt:] * det)[:, None, None] * np.einsum("eid,ejd->eij", g, g)
    return ke_t, ke_q


def region_mask(mesh: Mesh, region):
    if isinstance(region, str):
        if region == OMEGA_STAR:
            return np.ones(mesh.n_elements, bool)
        if region == OMEGA:
            mask = np.asarray(mesh.element_in_omega, bool)
            if not mask.any():
                raise EmptyRegionError("no elements are tagged as lying in omega")
            return mask
        raise ValueError(f"unknown region {region!r}")
    mask = np.asarray(region, bool)
    if mask.shape != (mesh.n_elements,):
        raise ValueError("region mask does not match the element count")
    return mask


def assemble_stiffness(mesh: Mesh, c, region=OMEGA_STAR) -> sp.csr_matrix:
    """Sparse K with v^T K u = integral over the region of c grad u . grad v.

    ``region`` is ``OMEGA``, ``OMEGA_STAR`` or a boolean element mask.
    """
    mask = region_mask(mesh, region)
    ke_t, ke_q = element_matrices(mesh, c)
    nt = len(mesh.tris)
    rows, cols, vals = [], [], []
    for conn, ke, m in ((mesh.tris, ke_t, mask[:nt]), (mesh.quads, ke_q, mask[nt:])):
        if not m.any():
            continue
        conn, ke = conn[m], ke[m]
        k = conn.shape[1]
        rows.append(np.repeat(conn, k, axis=1).ravel())
        cols.append(np.tile(conn, (1, k)).ravel())
        vals.append(ke.ravel())
    n = mesh.n_nodes
    if not rows:
        return sp.csr_matrix((n, n))
    K = sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                      shape=(n, n)).tocsr()
    K.sum_duplicates()
    return K


def energy_inner_product(mesh: Mesh, c, u, v, region=OMEGA_STAR, K=None):
    """(u, v) in the energy of the region; pass ``K`` to reuse an assembled matrix."""
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    if u.shape[0] != mesh.n_nodes or v.shape[0] != mesh.n_nodes:
        raise ValueError("nodal fields do not match the mesh")
    if K is None:
        K = assemble_stiffness(mesh, c, region)
    # averaging both orders makes the result bitwise symmetric in (u, v)
    return float(0.5 * (v @ (K @ u) + u @ (K @ v)))


class DirichletSolver:
    """Factor the interior block once and solve for many boundary data.

    Unknowns are the nodes on neither the OUTER loop nor a clamped hole.
    """

    def __init__(self, mesh: Mesh, c, block_size=64):
        self.mesh = mesh
        self.c = np.asarray(c, float)
        self.block_size = block_size
        self.K = assemble_stiffness(mesh, self.c, OMEGA_STAR)
        self.outer = np.asarray(mesh.outer_nodes)
        self.clamped = np.setdiff1d(mesh.clamped_nodes, self.outer)
        constrained = np.zeros(mesh.n_nodes, bool)
        constrained[self.outer] = True
        constrained[self.clamped] = True
        self.free = np.flatnonzero(~constrained)
        K = self.K.tocsc()
        self.K_ff = K[self.free][:, self.free].tocsc()
        self.K_fo = K[self.free][:, self.outer].tocsc()
        self._lu = None
        if len(self.free):
            try:
                self._lu = spla.splu(self.K_ff, permc_spec="COLAMD")
            except RuntimeError as exc:
                raise SolverError(f"interior stiffness is singular: {exc}") from exc

    @property
    def n_outer(self):
        return len(self.outer)

    def _solve_free(self, rhs):
        x = self._lu.solve(rhs)
        r = rhs - self.K_ff @ x
        scale = np.linalg.norm(rhs, axis=0)
        scale[scale == 0] = 1.0
        rel = np.linalg.norm(r, axis=0) / scale
        if rel.max(initial=0.0) > RESIDUAL_TOL:
            x += self._lu.solve(r)
            r = rhs - self.K_ff @ x
            rel = np.linalg.norm(r, axis=0) / scale
            if rel.max() > RESIDUAL_TOL:
                raise SolverError(f"relative residual {rel.max():.2e} exceeds {RESIDUAL_TOL}")
        return x

    def solve(self, outer_values):
        """Nodal field(s) for OUTER values of shape (n_outer,) or (n_outer, k)."""
        g = np.asarray(outer_values, float)
        single = g.ndim == 1
        g = g.reshape(self.n_outer, -1)
        if g.shape[0] != self.n_outer:
            raise ValueError(f"expected {self.n_outer} OUTER values, got {g.shape[0]}")
        u = np.zeros((self.mesh.n_nodes, g.shape[1]))
        u[self.outer] = g
        if self._lu is not None:
            for j in range(0, g.shape[1], self.block_size):
                blk = slice(j, j + self.block_size)
                u[self.free, blk] = self._solve_free(-(self.K_fo @ g[:, blk]))
        return u[:, 0] if single else u


def solve_dirichlet(mesh: Mesh, c, outer_values):
    """u with u = outer_values on OUTER nodes (anchor-first, counterclockwise)
    and u = 0 on clamped holes."""
    return DirichletSolver(mesh, c).solve(outer_values)


def boundary_work(mesh: Mesh, c, u, K=None):
    """Work of the consistent nodal boundary reactions: sum over OUTER nodes of
    (K u)_i u_i. Equals the total energy for a discrete harmonic u."""
    if K is None:
        K = assemble_stiffness(mesh, c, OMEGA_STAR)
    u = np.asarray(u, float)
    outer = mesh.outer_nodes
    return float((K @ u)[outer] @ u[outer])


def element_gradients(mesh: Mesh, u):
    """Per-element gradient, constant on triangles and at the centroid on quads."""
    u = np.asarray(u, float)
    out = np.zeros((mesh.n_elements, 2))
    nt = len(mesh.tris)
    if nt:
        g, _ = _tri_gradients(mesh)
        out[:nt] = np.einsum("eid,ei->ed", g, u[mesh.tris])
    if len(mesh.quads):
        g, _ = _quad_gradients(mesh, 0.0, 0.0)
        out[nt:] = np.einsum("eid,ei->ed", g, u[mesh.quads])
    return out


def gradient_and_stress(mesh: Mesh, c, u):
    """Per-element strain magnitude |grad u| and stress magnitude |c grad u|."""
    strain = np.linalg.norm(element_gradients(mesh, u), axis=1)
    return strain, np.asarray(c, float) * strain


def outer_edge_tractions(mesh: Mesh, c, u):
    """c grad u . n on each OUTER edge from its single adjacent element.

    Edge k joins ``outer_nodes[k]`` and ``outer_nodes[k + 1]``. First-order
    accurate; diagnostic output only.
    """
    owner = {}
    nt = len(mesh.tris)
    for conn, off in ((mesh.tris, 0), (mesh.quads, nt)):
        k = conn.shape[1]
        for j in range(k):
            for e, (p, q) in enumerate(zip(conn[:, j], conn[:, (j + 1) % k])):
                owner[(min(p, q), max(p, q))] = e + off
    grads = element_gradients(mesh, u)
    loop = mesh.outer_nodes
    nxt = np.roll(loop, -1)
    d = mesh.nodes[nxt] - mesh.nodes[loop]
    normals = np.column_stack([d[:, 1], -d[:, 0]]) / np.linalg.norm(d, axis=1)[:, None]
    elems = np.array([owner[(min(p, q), max(p, q))] for p, q in zip(loop, nxt)])
    c = np.asarray(c, float)
    return c[elems] * np.einsum("ed,ed->e", grads[elems], normals)
