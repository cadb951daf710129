"""Trees, channel bases, generalized associators and bracket composition."""
from .bracket import MorphismBlock, bracket_compose, generalized_associator, hom_basis, linear_combination, prolong
from .trees import (
    CoherenceError,
    Placement,
    TreeEngine,
    left_comb,
    n_leaves,
    right_comb,
    rotation_moves,
    tensor_placements,
)
