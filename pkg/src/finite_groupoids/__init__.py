"""Finite groupoids in one-object form, their duals in commutative algebras,
groupoid objects in associative algebras, and actions.

The usual entry points are re-exported here; see the submodules for the rest.
"""

from .actions import (FiniteAction, action_groupoid, base_action, from_right_action,
                      orbits, self_action, validate_action)
from .algebra import (AlgebraGroupoidObject, Bimodule, FiniteDimAlgebra,
                      build_abelian_extension, structure_theorem_check,
                      validate_algebra_groupoid)
from .cogroupoid import (Cogroupoid, CommAlgebra, HopfPresentation, cobase,
                         cogroupoid_from_hopf, dualize_groupoid, hopf_check, pushout,
                         validate_cogroupoid)
from .constructions import (CayleyTable, cyclic_groupoid, discrete_groupoid, disjoint_union,
                            empty_groupoid, group_groupoid, pair_groupoid,
                            partial_bijection_groupoid, product_groupoid, trivial_group)
from .core import (UNDEFINED, ClassicalPresentation, FiniteGroupoid, GroupoidHom, base,
                   check_hom, from_classical, is_group_object, to_classical,
                   validate_category, validate_groupoid)
from .enumeration import (IsoClassSummary, are_isomorphic, canonical_form,
                          enumerate_groupoids, enumerate_labeled)
from .linalg import field
from .reports import (InvalidStructure, MalformedInput, ResourceLimit, SoundnessError,
                      ValidationReport, Violation)

__version__ = "0.1.0"
