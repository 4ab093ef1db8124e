"""Exact computer algebra for quantized enveloping algebras of small rank,
their coideal subalgebras built from involutive symmetries, universal R- and
K-operators, and the centers of the coideal subalgebras.

Everything is computed over Q(q^(1/d)) with exact big-integer arithmetic;
all verified identities are identities of operators or symbolic elements
with identically zero residual.
"""

from .kernel import BACKEND
from .scalar import Scalar, ScalarField

__version__ = "0.1.0"

__all__ = ["BACKEND", "Scalar", "ScalarField", "__version__"]
