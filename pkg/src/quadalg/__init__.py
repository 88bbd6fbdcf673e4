"""quadalg: exact and generic Hilbert series of quadratic algebras.

Submodules
----------
fields    exact rationals and GF(p), seeded sampling
freealg   words, noncommutative polynomials, presentations and parsing
series    truncated integer series and the growth lower bound
groebner  truncated two-sided completion, word counting, Hilbert series
linalg    exact row spaces: rank, intersection, annihilators, tensors
tensors   tensor-square witnesses, the rank method, block constructions
search    vanishing-threshold searches and closed-form bound families
cli       command-line front end and the verification suite
"""

from .fields import (DEFAULT_SAMPLING_PRIME, FieldError, FieldSpec, gf,
                     make_field, parse_field, random_element, rationals)
from .freealg import (DegLexOrder, ParseError, Polynomial, Presentation,
                      builtin_presentation, compare, default_order,
                      effective_relation_count, multiply, parse_presentation,
                      print_presentation)
from .groebner import (GroebnerBasis, complete_to_degree, count_normal_words,
                       hilbert_series, hilbert_with_basis, naive_count_avoiding,
                       normal_form)
from .linalg import RowSpace, rank, read_rowspace, write_rowspace
from .series import (TruncatedSeries, dominates, gs_bound,
                     gs_coefficient_closed, invert, truncate_at_first_negative)
from .tensors import (AmbientSizeError, Certificate, GenericInstance,
                      TensorContext, WitnessSubspace, alp4_check,
                      block_dims, block_sum, builtin_subspace,
                      certify_vanishing, component_dim_by_rank, component_dims,
                      construct, generic_dims, gfield_witness, inflate,
                      instance_from_presentation, lattice_component,
                      lattice_dim, random_instance, relation_perp,
                      vershik_witness, whatnot1_witness)
from .search import (RatioTable, ThresholdResult, alpha_table, closed_deltan,
                     closed_dn, dsearch, gs_lower_threshold, inflation_bound,
                     vershik_series)

__version__ = "0.1.0"
