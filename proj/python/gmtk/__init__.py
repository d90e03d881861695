from ._gmtk import *  # noqa: F401,F403
from ._gmtk import __doc__  # noqa: F401
