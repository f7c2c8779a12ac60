"""Structure-aware decomposition of linear projections into axis-aligned
scatterplots, with diverse projection search and evidence ranking."""

__version__ = "0.1.0"
