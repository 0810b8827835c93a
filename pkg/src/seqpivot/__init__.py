"""Sequential pivotal mechanism for the public project problem."""
from .core import *  # noqa: F401,F403
from .core import final_utility, social_welfare, all_profiles  # noqa: F401
from .strategies import *  # noqa: F401,F403
from .sequential import *  # noqa: F401,F403
from .verdict import Verdict, Witness  # noqa: F401

__version__ = "0.1.0"
