"""Homological invariants of bound quiver algebras over GF(p).

Projective dimension via syzygy graphs, layer-length functors, the
Igusa-Todorov functions and upper bounds for the finitistic dimension.
"""

from .algfile import SpecError, example_path, load, parse_spec
from .homology import DEFAULT_CAPS, Caps, Finite, Infinite, Unknown, pd
from .modules import Representation, direct_sum, injective, projective, simple
from .quiver import BoundAlgebra, Quiver, build_algebra

__version__ = "0.1.0"


def example_algebra(p: int | None = None):
    """The shipped example algebra (and its named modules), optionally over another prime."""
    spec = load(example_path())
    if p is not None:
        spec.p = p
    a = spec.build()
    return a, spec.build_modules(a)


__all__ = [
    "BoundAlgebra", "Caps", "DEFAULT_CAPS", "Finite", "Infinite", "Quiver",
    "Representation", "SpecError", "Unknown", "build_algebra", "direct_sum",
    "example_algebra", "example_path", "injective", "load", "parse_spec", "pd",
    "projective", "simple",
]
