"""Identity description language: parser, AST, printer and exact evaluator."""
from .ast import Identity, coefficient_sites, infer_mode, int_sites, mutate_int
from .evaluator import EvalError, Evaluator, eval_identity, eval_sides, evaluator_for
from .parser import (
    ArityError, IdlEntry, LexError, NonAffineError, ParseError, parse, parse_expr, parse_file,
)
from .printer import format_expr, format_file, format_identity

__all__ = [
    "ArityError", "EvalError", "coefficient_sites", "Evaluator", "IdlEntry", "Identity", "LexError",
    "NonAffineError", "ParseError", "eval_identity", "eval_sides", "evaluator_for",
    "format_expr", "format_file", "format_identity", "infer_mode", "int_sites",
    "mutate_int", "parse", "parse_expr", "parse_file",
]
