"""Exact ported extensors, the extensor-valued Tutte function M_E and its uses.

The modules build on each other: ``ring`` (polynomials), ``exterior``
(extensors), ``ported`` (M_E), ``matroid`` (chirotopes and R),
``activities`` (computation trees) and ``circuits`` (networks).
"""

from .errors import ExtutteError
from .exterior import AltTensor, Extensor, Orientation, contract, delete, dual, eps, from_matrix, wedge
from .ported import PortedExtensor, big_m, m_e, m_empty, subset_expansion
from .ring import Poly, RingElem, Variable, render

__all__ = [
    "ExtutteError",
    "AltTensor",
    "Extensor",
    "Orientation",
    "contract",
    "delete",
    "dual",
    "eps",
    "from_matrix",
    "wedge",
    "PortedExtensor",
    "big_m",
    "m_e",
    "m_empty",
    "subset_expansion",
    "Poly",
    "RingElem",
    "Variable",
    "render",
]
