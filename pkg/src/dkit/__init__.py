"""Exact derivations, centroids and descent checks for finite-dimensional and loop algebras."""

from .algebra import (Algebra, CommutativeExtension, Dimodule, base_change_algebra, base_change_dimodule,
                      dual_dimodule, regular_dimodule, trivial_dimodule, twisted_dimodule)
from .catalog import catalog_get, extension_get, module_get
from .linalg import QQ, ExactMatrix, FieldSpec, LinearSubspace
from .solvers import cent_space, der_space, h1_lie, hh1_assoc

__all__ = ["Algebra", "CommutativeExtension", "Dimodule", "ExactMatrix", "FieldSpec", "LinearSubspace", "QQ",
           "base_change_algebra", "base_change_dimodule", "catalog_get", "cent_space", "der_space",
           "dual_dimodule", "extension_get", "h1_lie", "hh1_assoc", "module_get", "regular_dimodule",
           "trivial_dimodule", "twisted_dimodule"]
