"""Sparse-array MIMO link analysis."""

try:
    from ._sparsemimo import *  # noqa: F401,F403
    from ._sparsemimo import __doc__ as _core_doc
except ImportError:  # core built outside the package (e.g. in-tree builds)
    from _sparsemimo import *  # noqa: F401,F403
    from _sparsemimo import __doc__ as _core_doc

__doc__ = _core_doc or __doc__
__version__ = "1.0.0"
