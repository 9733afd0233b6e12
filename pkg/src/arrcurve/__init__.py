"""Exact combinatorics of real simplicial hyperplane arrangements.

Intersection posets and nested sets, dual zonotopes, Salvetti complexes,
the Garside structure of the Deligne groupoid and the face poset of the
blown-up complement.
"""

from . import families
from .arrangement import (Arrangement, Flat, IntersectionPoset, NestedComplex, NestedForest,
                          complex_of_irreducibles, decompose, direct_sum, essentialize,
                          intersection_poset, irreducible_flats, is_building_set,
                          is_irreducible_flat, is_nested, is_simplicial, matroid_components,
                          nested_forest, normal_arrangement, restriction, restriction_origins,
                          subnormal)
from .curveblowup import (BlowupFace, BlowupPoset, HomologyReport, blowup_faces, homology,
                          quotient_curve_complex, simplicial_homology, verify_wedge)
from .deligne import (DeligneGroupoid, Letter, Morphism, NormalForm, Simple, garside_selftest,
                      groupoid, parse_path)
from .errors import ArrangementError, CapExceededError, InvariantViolation, NotSimplicialError
from .exactlin import QSqrt5, SubspaceBasis, rank, rref, smith_normal_form
from .salvetti import (SalvettiComplex, bs_simplices, embed_point, embedding_check, one_skeleton,
                       orthogonal_complement_complex, salvetti_complex, standard_subcomplex)
from .zonotope import Zonotope, chambers, faces, zonotope

__version__ = "0.1.0"
