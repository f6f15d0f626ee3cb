"""Figure rendering for doublewell CLI outputs."""

from .recipes import RECIPES, FigureRecipe, PlotDataError, load_inputs, load_table
from .render import build_figure, render

__version__ = "0.1.0"
