"""Graph-theoretic tools for quantum contextuality: exclusivity graphs, odd holes
and antiholes, independence/Lovász numbers, orthonormal representations and
exclusivity-principle bounds."""

__version__ = "0.1.0"
