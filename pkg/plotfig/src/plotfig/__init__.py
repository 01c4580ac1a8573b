"""Figure regeneration from semispec CSV/JSON artifacts (no recomputation)."""

from .render import KINDS, FigureSpec, RenderInfo, render
from .schema import SchemaError, validate

__version__ = "0.1.0"

__all__ = ["FigureSpec", "RenderInfo", "render", "validate", "SchemaError",
           "KINDS", "__version__"]
