"""Exact evaluation of symmetric sl2 webs and the link invariants built from them."""

from .braid import ColoredBraidWord, braiding_inverse, colored_jones, crossing, lusztig_T, trace_closure
from .dsl import parse_and_elaborate, parse_web, to_text
from .jw import jw_recursive, jw_word
from .qpoly import InexactDivisionError, LaurentHalf, qbinom, qfact, qint
from .relations import relation_catalogue, simplify, sweep
from .repbackend import IntertwinerMatrix, eval_closed, evaluate
from .spider import Cap, Cup, Merge, Split, WebMorphism, WebObject, WebWord, circle

__all__ = [
    "Cap", "ColoredBraidWord", "Cup", "InexactDivisionError", "IntertwinerMatrix", "LaurentHalf",
    "Merge", "Split", "WebMorphism", "WebObject", "WebWord", "braiding_inverse", "circle",
    "colored_jones", "crossing", "eval_closed", "evaluate", "jw_recursive", "jw_word",
    "lusztig_T", "parse_and_elaborate", "parse_web", "qbinom", "qfact", "qint",
    "relation_catalogue", "simplify", "sweep", "to_text", "trace_closure",
]
