"""Rendering of the game-tree workbench's CSV outputs: the three-row
figure grid (pmf, difficulty, relative-complexity curves) and the
Monte-Carlo convergence panels with CI bands and oracle lines.

Strictly presentation: every number comes from the input CSVs.
"""

from .render import FigureSpec, render, render_fig2, render_mc
from .schemas import (DIFFICULTY_COLUMNS, MC_COLUMNS, PMF_COLUMNS,
                      RATIO_COLUMNS, SchemaError, fig2_columns, load_csv)

__version__ = "0.1.0"
