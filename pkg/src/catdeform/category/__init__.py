"""Skeletal tensor and bitensor category data."""
from .datum import BitensorDatum, DatumError, FusionDatum
from .generators import (
    CocycleError,
    check_cocycle,
    dims_report,
    gauge_twist,
    gen_function_bitensor,
    gen_grouplike_bitensor,
    gen_pointed,
    group_of_pointed,
    pointed_omega,
    random_gauge,
)
from .group import GroupError, GroupTable, cyclic, direct_product, klein, load_group, symmetric
from .io import ParseError, ValidationError, category_to_json, load_category, parse_category, save_category
from .validate import validate, validate_pentagon, validate_triangle
