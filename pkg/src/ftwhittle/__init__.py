"""Whittling the Khovanov complex of torus braids ``ft_n^k``.

The pipeline is: enumerate enhanced Kauffman states, select distinguished
Gaussian-elimination isomorphisms, check that the graph of connecting maps
between them is acyclic, and keep the unmatched states.  Temperley-Lieb
rewriting classifies the survivors; an integer homology computation of the
closed braid serves as an independent check.
"""

from .braids import BraidError, BraidWord, crossing_position, make_torus_braid
from .counting import (
    SurvivorForm,
    classify_survivor,
    count_bound,
    count_bound_terms,
    formula_N,
    ordered_partitions,
)
from .homology import HomologySummary, IntComplex, close_and_build, euler_state_sum, homology
from .states import (
    EnhancedState,
    KauffmanState,
    differential_components,
    enumerate_enhanced,
    enumerate_states,
    gradings,
    resolve,
    saddle,
)
from .tl import (
    JNFTuple,
    TLDiagram,
    TLMove,
    TLPath,
    TLWord,
    apply_move,
    catalan,
    d_move_reduce,
    enumerate_jnf,
    evaluate,
    is_jnf,
    reduce_to_jnf,
)
from .whittler import (
    CycleDetected,
    GEIsomorphism,
    WhittleGraph,
    WhittledComplex,
    build_graph,
    detect_iso_at,
    select_distinguished,
    topological_order,
    whittle,
)

__version__ = "0.1.0"
