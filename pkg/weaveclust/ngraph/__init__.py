"""N-графы на диске и кольце, циклы, лежандровы мутации и Кокстеровы прокладки."""

from weaveclust.ngraph.annulus import (
    cleanup,
    concatenate,
    coxeter_padding,
    elementary_annulus,
    inverse,
    is_trivial,
    rotation_annulus,
    trace_annulus,
    trivial_annulus,
)
from weaveclust.ngraph.cycles import (
    CycleSpec,
    NGraphWithCycles,
    cycle_shape,
    intersection_number,
    quiver_from_cycles,
)
from weaveclust.ngraph.families import build_affine_d, build_linear, build_tripod
from weaveclust.ngraph.graph import (
    AnnularNGraph,
    NGraph,
    boundary_word,
    boundary_words_annulus,
    conjugate,
    graph_from_dict,
    is_free_sufficient,
    rotate,
)
from weaveclust.ngraph.moves import (
    equivariance_check,
    legendrian_coxeter_mutation,
    mutate,
    mutate_sequence,
    sample_supported,
)
from weaveclust.ngraph.symmetry import Symmetry, find_isomorphism, is_invariant, is_isomorphic
