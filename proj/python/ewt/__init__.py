"""Entanglement witness toolkit: python bindings over the C++ core."""

try:
    from ._ewt import *  # noqa: F401,F403
    from ._ewt import __version__  # noqa: F401
except ImportError:  # extension on sys.path directly (build-tree test runs)
    from _ewt import *  # noqa: F401,F403
    from _ewt import __version__  # noqa: F401
