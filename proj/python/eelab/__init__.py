"""Entanglement-entropy laboratory for quasi-free Fermi gases.

Thin python surface over the C++ core: scalar entropy functions, the free
Fermi-projection kernel and Green's function, Nystrom restrictions, lattice
models, Riesz contour projections, Schatten-norm checks and scaling fits.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # pragma: no cover - dev layout with the module beside the package
    from _core import *  # type: ignore # noqa: F401,F403

__version__ = "0.1.0"
