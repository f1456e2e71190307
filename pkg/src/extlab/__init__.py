"""Exact arithmetic for abelian group extensions given by explicit cocycles."""

from .padic import *  # noqa: F401,F403
from .cocycle import *  # noqa: F401,F403
from .em import *  # noqa: F401,F403
from .api import *  # noqa: F401,F403
from .rank2 import *  # noqa: F401,F403

__version__ = "0.1.0"
