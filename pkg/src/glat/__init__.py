"""glat: exact cohomology, flasque resolutions and stable-permutation checks for G-lattices."""

from ._backend import BACKEND
from .cohomology import CohomologyProfile, h0, h1, h1_cyclic, h1_profile, h1_subgroup
from .errors import (GlatError, GroupMismatch, InputError, InvalidParameter, InvariantViolation,
                     NotAbelian, NotCommuting, NotCyclic, NotFinite, NotNormal, NotUnimodular,
                     ParseError, SubNotContained)
from .groups import FiniteMatrixGroup, Subgroup, abelian_invariants, direct_product_action, generate, subgroups
from .lattices import (GLattice, IsoResult, augmentation_ideal, direct_sum, dual, equivariant_iso_search,
                       fixed_sublattice, is_permutation_in_basis, morphism_space, permutation_lattice,
                       restrict, trivial_lattice)
from .resolutions import (CoflasqueCover, FlasqueResolution, ObstructionReport, SimilarityResult,
                          coflasque_cover, flasque_resolution, is_coflasque, is_flasque,
                          similarity_verdict, stably_permutation_verdict, verify_resolution)
from .zlinalg import (FiniteAbelianGroup, IntMatrix, SmithForm, hermite_basis, kernel_basis,
                      quotient_structure, smith_normal_form)

__all__ = [name for name in dir() if not name.startswith("_")]
