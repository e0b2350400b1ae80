"""Guarded process semantics: CCS, depth-bounded evaluation, bisimilarity, HML."""

from ._core import (
    CompiledCcs,
    Glts,
    LimitExceeded,
    ParseError,
    ShapeError,
    UnknownName,
    bisim_classes,
    bisimilar,
    coincidence,
    compile_ccs,
    distinguish,
    eval,
    example_fig1,
    glts_from_json,
    parse_glts,
    print_ccs,
    sat,
    stable_level,
    witness_count_total,
)

__all__ = [
    "CompiledCcs",
    "Glts",
    "LimitExceeded",
    "ParseError",
    "ShapeError",
    "UnknownName",
    "bisim_classes",
    "bisimilar",
    "coincidence",
    "compile_ccs",
    "distinguish",
    "eval",
    "example_fig1",
    "glts_from_json",
    "parse_glts",
    "print_ccs",
    "sat",
    "stable_level",
    "witness_count_total",
]
