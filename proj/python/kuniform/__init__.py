# Copyright 2026 The kuniform Authors
# SPDX-License-Identifier: Apache-2.0
"""Approximate k-uniform states and codes."""

try:
    from . import _kuniform
except ImportError:  # in-tree build: the extension sits on PYTHONPATH
    import _kuniform

__version__ = _kuniform.__version__

for _name in dir(_kuniform):
    if not _name.startswith("_"):
        globals()[_name] = getattr(_kuniform, _name)
del _name
