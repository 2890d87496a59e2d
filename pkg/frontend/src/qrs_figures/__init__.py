"""Presentation layer for rabi-square CSV tables.

Reads the versioned CSV files the solver CLI writes and turns them into
figures; no physics is recomputed here, so the plots always show exactly
what the solver reported.
"""

from .render import FigureSpec, RenderReport, render
from .schema import KINDS, SchemaError, Table, read_table, validate

__version__ = "0.1.0"
