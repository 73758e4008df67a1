from ._mkcs import *  # noqa: F401,F403
