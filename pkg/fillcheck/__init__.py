"""
fillcheck - homological obstructions to contact embeddings and fillings
Exact integer linear algebra, Brieskorn link invariants and cited verdicts
"""

__version__ = "1.0.0"
