"""Higher diagonals on integral chain complexes.

Modules:

* :mod:`mstruct.zmod` - free chain complexes over the integers, graded maps, homology;
* :mod:`mstruct.symbar` - permutations and the bar resolutions ``RS_n``;
* :mod:`mstruct.operads` - operads and checks of their identities;
* :mod:`mstruct.mcoalg` - m-coalgebras, strict morphisms, contractions, zig-zag lifts;
* :mod:`mstruct.simpchain` - simplicial sets, their canonical m-structure, Steenrod squares;
* :mod:`mstruct.cobar` - cobar constructions, twisted tensor products, k-invariants;
* :mod:`mstruct.cli` - the ``mstruct`` command.
"""
from .cobar import (Coalgebra, CobarComplex, TwistingCochain, canonical_twisting, cobar, cobar_functor,
                    cobar_row, k_invariant, twisted_tensor)
from .mcoalg import (Contraction, MCoalgebra, StrictMorphism, ZigZag, check_contraction, check_lift,
                     check_mstructure, check_weak_coherence, coherence_reports, homotopy_commutativity,
                     verify_coherence_identity, zigzag_lift)
from .operads import check_operad_identities, endomorphism_operad, symmetric_construct, trivial_operad
from .simpchain import SimplicialSet, canonical_mstructure, fixture, steenrod_square
from .symbar import BarResolution, Permutation, bar_resolution, parse_cycles
from .zmod import FreeComplex, GradedMap, homology, mapping_cone

__all__ = [
    "BarResolution", "Coalgebra", "CobarComplex", "Contraction", "FreeComplex", "GradedMap",
    "MCoalgebra", "Permutation", "SimplicialSet", "StrictMorphism", "TwistingCochain", "ZigZag",
    "bar_resolution", "canonical_mstructure", "canonical_twisting", "check_contraction", "check_lift",
    "check_mstructure", "check_operad_identities", "check_weak_coherence", "cobar", "cobar_functor",
    "cobar_row", "coherence_reports", "endomorphism_operad", "fixture", "homology",
    "homotopy_commutativity", "k_invariant", "mapping_cone", "parse_cycles", "steenrod_square",
    "symmetric_construct", "trivial_operad", "twisted_tensor", "verify_coherence_identity", "zigzag_lift",
]
