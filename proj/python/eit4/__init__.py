"""Five-level rf-dressed EIT model of the hydrogen ground state."""

from ._eit4 import *  # noqa: F401,F403
from ._eit4 import __doc__  # noqa: F401

__version__ = "0.1.0"
