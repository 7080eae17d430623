"""Weighted permutation representations, exceptional Tate classes and angle ranks
for abelian varieties over finite fields."""
from .errors import (PreconditionError, ResourceLimitError, ValidationError,
                     WeilLabError)
from .groups import (PermGroup, SignedPermutation, canonical_key, compose,
                     conjugation_element, generate, is_transitive,
                     stabilizer_of_weight)
from .subgroups import enumerate_transitive_subgroups
from .weights import (NewtonPolygon, WeightFunction, gcd_simplicity_criterion,
                      weight_from_newton)
from .wpr import (ExceptionalWitness, WeightedPermRep, angle_rank,
                  exceptional_witnesses, is_geometrically_simple,
                  level_set_partition, phi_matrix)

__version__ = "0.1.0"
