"""Quantum Markov-state toolkit: conditional mutual information, Petz
recovery, reduced dynamics, steering families, and scenario traces."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # in-tree build: _core sits next to us on PYTHONPATH
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__doc__ = _core_doc or __doc__
