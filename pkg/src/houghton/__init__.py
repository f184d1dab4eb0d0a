"""Exact computations in Houghton groups H_n."""

from houghton.dsl import dumps, format_element, loads, parse_element
from houghton.elements import (
    FixRay,
    HoughtonElement,
    KerLambda,
    Partial,
    SymInf,
    SymTwoRays,
    apply,
    compose,
    conj_by_t,
    cycle,
    identity,
    inverse,
    lambda_vec,
    membership,
    t,
    zcycle,
)

__all__ = [
    "FixRay",
    "HoughtonElement",
    "KerLambda",
    "Partial",
    "SymInf",
    "SymTwoRays",
    "apply",
    "compose",
    "conj_by_t",
    "cycle",
    "dumps",
    "format_element",
    "identity",
    "inverse",
    "lambda_vec",
    "loads",
    "membership",
    "parse_element",
    "t",
    "zcycle",
]
