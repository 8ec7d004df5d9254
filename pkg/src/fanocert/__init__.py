"""Exact certificates for the arithmetic steps of a birational rigidity proof.

Subpackages: ``sysmodel`` (parametric linear systems), ``lpsolve`` (exact
simplex and Farkas certificates), ``optimize`` (small exact minimisations),
``chains`` (hypertangent ratio chains) and ``resgraph`` (resolution graphs).
"""

__version__ = "0.1.0"
