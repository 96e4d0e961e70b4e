"""Exact-arithmetic toolkit for multigraded adjoint rings on surface models.

Thin wrapper over the compiled extension: arguments and results are plain
dicts/lists mirroring the CLI's JSON schemas, with rationals as "p/q"
strings.
"""

import json as _json

try:
    from . import _adjointkit as _impl
except ImportError:  # extension built next to the package instead of inside it
    import _adjointkit as _impl

InconsistencyError = _impl.InconsistencyError

__all__ = [
    "InconsistencyError",
    "common_point",
    "cover",
    "zariski",
    "mmp",
    "pseff_region",
    "wlc_decomposition",
    "semiample_generators",
    "toric_surface",
    "adjoint_slice",
    "run_pipeline",
    "verify_trace",
]


def common_point(polytope):
    return _json.loads(_impl.common_point(_json.dumps(polytope)))


def cover(c, parts):
    return _json.loads(_impl.cover(_json.dumps(c), _json.dumps(parts)))


def zariski(surface, divisor):
    return _json.loads(_impl.zariski(_json.dumps(surface), _json.dumps(divisor)))


def mmp(surface, delta):
    return _json.loads(_impl.mmp(_json.dumps(surface), _json.dumps(delta)))


def pseff_region(surface, boundaries, chart=None):
    chart_text = "" if chart is None else _json.dumps(chart)
    return _json.loads(
        _impl.pseff_region(_json.dumps(surface), _json.dumps(boundaries), chart_text)
    )


def wlc_decomposition(surface, boundaries, chart=None):
    chart_text = "" if chart is None else _json.dumps(chart)
    return _json.loads(
        _impl.wlc_decomposition(_json.dumps(surface), _json.dumps(boundaries), chart_text)
    )


def semiample_generators(polygons):
    return _json.loads(_impl.semiample_generators(_json.dumps(polygons)))


def toric_surface(rays, k):
    return _json.loads(_impl.toric_surface(_json.dumps(rays), _json.dumps(k)))


def adjoint_slice(instance, bound=8):
    return _json.loads(_impl.adjoint_slice(_json.dumps(instance), bound))


def run_pipeline(instance, bound=8):
    """Returns (result, trace_lines)."""
    out = _json.loads(_impl.run_pipeline(_json.dumps(instance), bound))
    return out["result"], out["trace"]


def verify_trace(lines):
    return _json.loads(_impl.verify_trace(list(lines)))
