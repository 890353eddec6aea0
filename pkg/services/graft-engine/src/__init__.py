"""Graft engine: minimum joins and distance decompositions of grafts."""
