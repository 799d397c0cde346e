"""Exact homological algebra of iterated complexes and truncated
relative cohomology, Deligne algebras of Dolbeault algebras, the star
product of Green objects, and the closed-form arithmetic intersection
numbers of modular curves."""

__version__ = "0.1.0"
