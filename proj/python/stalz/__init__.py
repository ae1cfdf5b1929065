"""Shortcuts-to-adiabaticity toolkit for the driven two-level (Landau-Zener) system.

Thin re-export of the compiled core: operators and states, the protocol
Hamiltonians (adiabatic, counter-diabatic, traditional / optimal / generalized
TQD), unitary and dephasing propagators, energy-cost metrics and the sweep
runner used by the ``stalz`` CLI.
"""

from stalz._core import *  # noqa: F401,F403
from stalz._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc or __doc__
