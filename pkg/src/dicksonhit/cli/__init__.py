from .grammar import EvalError, ParseError, evaluate, parse, to_text

__all__ = ["EvalError", "ParseError", "evaluate", "parse", "to_text"]
