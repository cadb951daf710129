"""The extended bicomplex of a bitensor datum."""
from .core import MAX_BIDEGREE, BiComplex, BicomplexError, BiSpace, coprod_terms, expand, tensor_terms
from .equations import (
    BiCochain,
    bicochain_from_json,
    coprod,
    load_bicochain,
    pushback,
    save_bicochain,
    solve_D1,
    solve_D2,
    split_total,
    tensor,
    total_blocks,
    total_cohomology,
    total_differential,
    verify_bicomplex,
    verify_triple,
    zero,
)
