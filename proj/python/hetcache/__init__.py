"""Coded caching with common and group-unique file classes."""

try:
    from ._hetcache import *  # noqa: F401,F403
    from ._hetcache import __doc__  # noqa: F401
except ImportError:  # running against a build tree, module beside the package
    from _hetcache import *  # noqa: F401,F403
