"""
ant-mill-stability: numerical checks of a chemotactic rotating-mill model.

This package evaluates the closed-form annular steady state of a
density/pheromone/velocity system, evolves perturbations of it, assembles
and solves the linearized stability eigenproblem per azimuthal mode, and
verifies that the angular reorientation kernel admits no nontrivial
Fredholm solution.

Architecture:
    - models: pydantic records for parameters, grids, fields and results
    - numerics: finite-difference matrices, angular quadrature, transport terms
    - services: analyses, decoupled from the CLI
    - adapters: scipy.linalg backend, JSON config, CSV/JSON artifacts
"""

__version__ = "0.1.0"
__author__ = "Jeff"
