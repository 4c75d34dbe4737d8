"""Direct and inverse conversion transforms for Khabibullin's conjecture."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # in-tree builds put _core on sys.path directly
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
