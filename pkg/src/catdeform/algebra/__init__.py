from .fields import (
    QQ,
    CyclotomicField,
    Field,
    FieldError,
    PrimeField,
    RationalField,
    Scalar,
    cyclotomic_polynomial,
    cyclotomic_reduce,
    euler_phi,
    field_from_name,
    field_from_spec,
    is_prime,
    scalar_arith,
)
from .matrix import (
    EchelonBasis,
    ExactMatrix,
    dense_matmul,
    invert_dense,
    rank,
    rank_kernel,
    solve_linear,
)
from .truncpoly import PolyRing, TruncatedPoly, parse_truncated, poly_arith
