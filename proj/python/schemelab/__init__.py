from ._schemelab import *  # noqa: F401,F403
from ._schemelab import __version__  # noqa: F401
