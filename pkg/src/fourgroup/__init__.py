"""Finite groups acted on by a four-group, D8 or S4, and the graded
Lie-algebra machinery used to study their exponents.

The package is organised bottom-up:

* :mod:`fourgroup.fplinalg` - exact linear algebra over F_p
* :mod:`fourgroup.groups` - Cayley-table groups and the subgroup calculus
* :mod:`fourgroup.actions` - automorphism actions of V, D8 and S4
* :mod:`fourgroup.vtheory` - component decomposition and the star operation
* :mod:`fourgroup.lie` - structure-constant Lie algebras over F_p
* :mod:`fourgroup.jennings` - dimension subgroups and the graded algebra DL(G)
* :mod:`fourgroup.criterion` - nilpotency criteria for D8-graded algebras
* :mod:`fourgroup.fixtures` - deterministic groups-with-actions test objects
* :mod:`fourgroup.cli` - command line front end and verification reports
"""

__version__ = "0.1.0"

from .errors import CapExceededError, InputFormatError, ValidationError

__all__ = [
    "CapExceededError",
    "InputFormatError",
    "ValidationError",
    "__version__",
]
