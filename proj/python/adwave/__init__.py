"""Numerical laboratory for a damped wave equation with an adhesion potential.

The heavy lifting lives in the compiled extension ``adwave._core``; this
package simply re-exports its surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
