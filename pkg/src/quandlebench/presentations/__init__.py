from .terms import (Gen, Op, Presentation, PresentationSyntaxError, Relation, Term,
                    UnknownGenerator, parse_presentation, parse_relation, parse_term)
from .free import FreeQuandleElement, free_generator, free_quandle_op, term_to_free
from .enumerate import DEFAULT_BUDGET, EnumerationResult, enumerate_presentation

__all__ = [
    "Gen", "Op", "Presentation", "PresentationSyntaxError", "Relation", "Term",
    "UnknownGenerator", "parse_presentation", "parse_relation", "parse_term",
    "FreeQuandleElement", "free_generator", "free_quandle_op", "term_to_free",
    "DEFAULT_BUDGET", "EnumerationResult", "enumerate_presentation",
]
