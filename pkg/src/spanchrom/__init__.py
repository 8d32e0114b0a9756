"""Span colourings of graphs over finite fields and Steenrod actions on
Stanley-Reisner rings generated in degrees 4 and 6."""

from .errors import SpanChromError

__version__ = "0.1.0"
__all__ = ["SpanChromError", "gf", "graph", "spancolour", "sr", "steenrod"]
