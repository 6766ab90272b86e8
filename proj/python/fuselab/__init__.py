"""Exact computations with saturated fusion systems over finite p-groups."""

try:
    from ._fuselab import *  # noqa: F401,F403
    from ._fuselab import __version__  # noqa: F401
except ImportError:  # pragma: no cover - source checkout without a built extension
    from _fuselab import *  # type: ignore # noqa: F401,F403
    from _fuselab import __version__  # type: ignore # noqa: F401
