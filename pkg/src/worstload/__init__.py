"""Worst-case boundary loads and energy concentration in antiplane shear.

Typical use::

    from worstload import generate_disk_mesh, material_field, worst_case
    mesh = generate_disk_mesh(1.0, 0.5, 0.04)
    result = worst_case(mesh, material_field(mesh))
    result.V
"""
from .concentration import (ConcentrationResult, assemble_gram, concentration_of,
                            solve_generalized_eig, worst_case)
from .fem import (OMEGA, OMEGA_STAR, DirichletSolver, assemble_stiffness, boundary_work,
                  energy_inner_product, gradient_and_stress, material_field, solve_dirichlet)
from .harmonic_basis import HarmonicBasis, build_basis, expand
from .kkl import (COSINE, SINE, KklEnsemble, RandomLoadSpec, build_ensemble,
                  expected_concentration, map_to_boundary, solve_transcendental)
from .mesh import (INCLUSION, INNER, MATRIX, OUTER, BoundaryParametrization, Mesh,
                   boundary_parametrization, generate_disk_mesh, generate_polygon_mesh,
                   generate_square_hole_mesh, load_mesh, validate, write_mesh)

__all__ = ["ConcentrationResult", "assemble_gram", "concentration_of", "solve_generalized_eig",
           "worst_case", "OMEGA", "OMEGA_STAR", "DirichletSolver", "assemble_stiffness",
           "boundary_work", "energy_inner_product", "gradient_and_stress", "material_field",
           "solve_dirichlet", "HarmonicBasis", "build_basis", "expand", "COSINE", "SINE",
           "KklEnsemble", "RandomLoadSpec", "build_ensemble", "expected_concentration",
           "map_to_boundary", "solve_transcendental", "INCLUSION", "INNER", "MATRIX", "OUTER",
           "BoundaryParametrization", "Mesh", "boundary_parametrization", "generate_disk_mesh",
           "generate_polygon_mesh", "generate_square_hole_mesh", "load_mesh", "validate",
           "write_mesh"]

__version__ = "0.1.0"
