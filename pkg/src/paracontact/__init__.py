"""Almost paracontact almost paracomplex Riemannian structures at a point.

Frame-component tensors are numpy arrays: ``F[i, j, k] = F(e_i, e_j, e_k)``
and ``phi[k, l]`` is the k-th component of ``phi e_l``.
"""

from .classes import (
    ClassReport,
    FundamentalTensor,
    LeeForms,
    classify,
    component,
    components,
    compute_F,
    dim3_components,
    lee_forms,
    project_to_space,
    pure_class_sample,
    random_F,
    subspace_dim_formula,
    subspace_dim_numeric,
)
from .errors import GeometryError
from .frame import TOL_CLASS, TOL_LIN, TOL_STRUCT, FrameModel
from .gallery import LieExample, build, random_structure
from .lie import Connection, LieAlgebraModel, levi_civita, nabla_eta_xi, nabla_phi
from .torsion import (
    assoc_nijenhuis,
    bracket_nijenhuis,
    nijenhuis,
    predicates,
    reconstruct_F,
)
from .structure import ApapStructure, StructureReport, validate_structure

__all__ = [
    "ApapStructure",
    "ClassReport",
    "Connection",
    "FrameModel",
    "FundamentalTensor",
    "GeometryError",
    "LeeForms",
    "LieAlgebraModel",
    "LieExample",
    "StructureReport",
    "TOL_CLASS",
    "TOL_LIN",
    "TOL_STRUCT",
    "assoc_nijenhuis",
    "bracket_nijenhuis",
    "build",
    "classify",
    "component",
    "components",
    "compute_F",
    "dim3_components",
    "lee_forms",
    "levi_civita",
    "nabla_eta_xi",
    "nabla_phi",
    "nijenhuis",
    "predicates",
    "project_to_space",
    "pure_class_sample",
    "random_F",
    "random_structure",
    "reconstruct_F",
    "subspace_dim_formula",
    "subspace_dim_numeric",
    "validate_structure",
]
