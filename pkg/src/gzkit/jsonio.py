"""JSON forms shared by the command-line tools.

Complex scalars are [re, im] pairs throughout:

  * matrix     {"n": int, "entries": [[[re, im], ...], ...]}   row-major
  * ladder     {"n": int, "levels": [[[re, im], ...], ...]}    levels ascending
  * chart form {"n": int, "r": [[re, im], ...], "s": [[re, im], ...]}
"""

import json

import numpy as np

from .charts import ChartPoint
from .ladder import Ladder, d


def _pair(value):
    return [float(np.real(value)), float(np.imag(value))]


def _scalar(pair):
    re, im = pair
    return complex(float(re), float(im))


def matrix_to_json(x):
    x = np.asarray(x, dtype=np.complex128)
    return {"n": int(x.shape[0]), "entries": [[_pair(v) for v in row] for row in x]}


def matrix_from_json(obj):
    n = int(obj["n"])
    entries = obj["entries"]
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ValueError("entries do not form an n-by-n matrix")
    return np.array(
        [[_scalar(v) for v in row] for row in entries], dtype=np.complex128
    )


def ladder_to_json(ladder):
    return {
        "n": ladder.n,
        "levels": [[_pair(v) for v in level] for level in ladder.levels],
    }


def ladder_from_json(obj):
    n = int(obj["n"])
    levels = obj["levels"]
    if len(levels) != n:
        raise ValueError("ladder must hold one level per size 1..n")
    return Ladder(tuple(np.array([_scalar(v) for v in level]) for level in levels))


def chartpoint_to_json(p):
    return {
        "n": p.n,
        "r": [_pair(v) for v in p.r],
        "s": [_pair(v) for v in p.s],
    }


def chartpoint_from_json(obj):
    n = int(obj["n"])
    r = np.array([_scalar(v) for v in obj["r"]])
    s = np.array([_scalar(v) for v in obj["s"]])
    if r.shape != (d(n),) or s.shape != (d(n - 1),):
        raise ValueError("coordinate counts do not match n")
    return ChartPoint(n, r, s)


def dump(obj):
    """Stable, round-trip-exact serialization (sorted keys, repr floats)."""
    return json.dumps(obj, sort_keys=True, indent=2)
