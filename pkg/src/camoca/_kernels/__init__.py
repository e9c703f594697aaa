"""Hot loops behind the exhaustive oracles: batch CA evaluation and square checks.

The compiled module is used when it was built; otherwise, or when
``CAMOCA_PURE_PYTHON=1`` is set, the pure-Python versions are used.
``BACKEND`` names the active one.
"""
import os

from . import _pykernels

# signed 64-bit codes in the compiled path
_C_CODE_LIMIT = 1 << 62

if os.environ.get("CAMOCA_PURE_PYTHON") == "1":
    _ckernels = None
else:
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
_impl = _ckernels if _ckernels is not None else _pykernels


def evaluate_codes(table, q, d, n, codes):
    if q**n >= _C_CODE_LIMIT or len(table) >= _C_CODE_LIMIT:
        return _pykernels.evaluate_codes(table, q, d, n, codes)
    return _impl.evaluate_codes(table, q, d, n, codes)


def superposition_distinct(a, b, order):
    return _impl.superposition_distinct(a, b, order)


def is_latin_flat(entries, order):
    return _impl.is_latin_flat(entries, order)
