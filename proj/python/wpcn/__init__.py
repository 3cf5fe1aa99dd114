"""Two-user wireless powered network with backscatter-assisted cooperation."""

from ._wpcn import *  # noqa: F401,F403
from ._wpcn import SolverError, ConfigError  # noqa: F401

__version__ = "0.1.0"
