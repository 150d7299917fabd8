try:
    from ._hopfolog import *  # noqa: F401,F403
    from ._hopfolog import __version__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _hopfolog import *  # noqa: F401,F403
    from _hopfolog import __version__  # noqa: F401
