"""Residual checks for hypercomplex geometries with torsion.

Thin wrapper over the C++ core: geometries are named by spec strings
(``flat:n=1``, ``hopf-lchk:n=2``, ``hopf-hkt:n=1``,
``product:hopf-hkt:n=1,hopf-hkt:n=1``) and every run returns the same JSON
report the ``hktlab`` CLI emits, parsed into a dict.
"""

import json as _json
import os as _os

try:
    from . import _core  # installed layout
except ImportError:  # pragma: no cover - build-tree layout for ctest
    import importlib.util as _ilu
    import sys as _sys

    _ext_dir = _os.environ.get("HKTLAB_EXT_DIR")
    if not _ext_dir:
        raise
    _candidates = [f for f in _os.listdir(_ext_dir) if f.startswith("_core")]
    if not _candidates:
        raise ImportError(f"no _core extension under {_ext_dir}")
    _spec = _ilu.spec_from_file_location(
        "hktlab._core", _os.path.join(_ext_dir, sorted(_candidates)[0])
    )
    _core = _ilu.module_from_spec(_spec)
    _sys.modules["hktlab._core"] = _core
    _spec.loader.exec_module(_core)

list_suites = _core.list_suites
list_checks = _core.list_checks
normalized_lambda = _core.normalized_lambda
deck_invariance_residual = _core.deck_invariance_residual

ConfigError = _core.ConfigError
PreconditionError = _core.PreconditionError
NotLchkError = _core.NotLchkError
NotHktError = _core.NotHktError


def run_suite(geometry, suite="paper-all", **kwargs):
    """Run a named suite on a geometry spec; returns the report as a dict."""
    return _json.loads(_core.run_suite_json(geometry, suite, **kwargs))


def run_check(geometry, check, **kwargs):
    """Run a single registry check; returns the report as a dict."""
    return _json.loads(_core.run_check_json(geometry, check, **kwargs))


def run_suite_json(geometry, suite="paper-all", **kwargs):
    """Same as run_suite but returns the raw deterministic JSON text."""
    return _core.run_suite_json(geometry, suite, **kwargs)


__all__ = [
    "run_suite",
    "run_check",
    "run_suite_json",
    "list_suites",
    "list_checks",
    "normalized_lambda",
    "deck_invariance_residual",
    "ConfigError",
    "PreconditionError",
    "NotLchkError",
    "NotHktError",
]
