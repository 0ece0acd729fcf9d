"""Rota-Baxter and symmetrized Rota-Baxter operators on M_2(F) and M_2(F)^(+)."""

__version__ = "0.1.0"
