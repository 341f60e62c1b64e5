"""Rendering scripts for the ncosc export schema.

The scripts never recompute physics: every number comes from the CSV/JSON
tables written by the `ncosc` CLI.
"""

__version__ = "0.1.0"

from .contours import render_contours
from .spec import FigureSpec
from .spirals import render_spirals
from .tables import TableError, read_table
