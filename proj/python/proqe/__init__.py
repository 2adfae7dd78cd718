"""Progressive query expansion over cost-metered retrieval sources."""

try:
    from proqe._proqe import *  # noqa: F401,F403  (installed layout)
    from proqe._proqe import __doc__ as _doc
except ImportError:  # pragma: no cover - build-tree layout
    from _proqe import *  # noqa: F401,F403
    from _proqe import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
