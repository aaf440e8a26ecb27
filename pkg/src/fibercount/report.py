"""Problem-file ingestion and deterministic JSON reports.

Problem files are JSON::

    {"n": 3, "k": 2,
     "supports": [[[0,0,0],[1,1,1]], [[0,0,0],[1,0,0],[2,1,1],[3,2,2]]],
     "coefficients": [[[0,0],[1,0]], [[0,0],[-1,0],[0,0],[1,0]]]}

``coefficients`` is optional; each complex number is an ``[re, im]`` pair
aligned with the exponent list of the same component.

Reports are rendered with a fixed key order and every float printed with 17
significant digits, so identical inputs give byte-identical output.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from importlib import resources
from numbers import Real
from typing import Optional

from . import __version__
from .classifier import Classification
from .fibers import C1Result, UnivariatePoly

SCHEMA_NAME = "report.schema.json"
_PROBLEM_KEYS = {"n", "k", "supports", "coefficients", "description"}


class ProblemFileError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemFile:
    n: int
    k: int
    supports: tuple  # k tuples of exponent tuples
    coefficients: Optional[tuple] = None  # k tuples of complex
    digest: str = ""
    notes: tuple = ()


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_num(x) -> bool:
    return isinstance(x, Real) and not isinstance(x, bool) and math.isfinite(x)


def parse_problem(raw: bytes) -> ProblemFile:
    try:
        data = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ProblemFileError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ProblemFileError("top level must be an object")
    extra = sorted(set(data) - _PROBLEM_KEYS)
    if extra:
        raise ProblemFileError(f"unknown keys: {', '.join(extra)}")
    for key in ("n", "k", "supports"):
        if key not in data:
            raise ProblemFileError(f"missing key '{key}'")
    n, k = data["n"], data["k"]
    if not _is_int(n) or n < 1:
        raise ProblemFileError("n: expected a positive integer")
    if not _is_int(k) or k < 1:
        raise ProblemFileError("k: expected a positive integer")

    sup = data["supports"]
    if not isinstance(sup, list) or len(sup) != k:
        raise ProblemFileError(f"supports: expected a list of {k} exponent lists")
    supports = []
    for i, comp in enumerate(sup):
        if not isinstance(comp, list) or not comp:
            raise ProblemFileError(f"supports[{i}]: expected a nonempty list of exponent vectors")
        seen = set()
        pts = []
        for j, w in enumerate(comp):
            where = f"supports[{i}][{j}]"
            if not isinstance(w, list) or not all(_is_int(c) for c in w):
                raise ProblemFileError(f"{where}: expected a list of integers")
            if len(w) != n:
                raise ProblemFileError(f"{where}: expected {n} coordinates, got {len(w)}")
            if any(c < 0 for c in w):
                raise ProblemFileError(f"{where}: exponents must be non-negative")
            if tuple(w) in seen:
                raise ProblemFileError(f"{where}: duplicate exponent {w}")
            seen.add(tuple(w))
            pts.append(tuple(w))
        supports.append(tuple(pts))

    coefficients = None
    notes = []
    if data.get("coefficients") is not None:
        co = data["coefficients"]
        if not isinstance(co, list) or len(co) != k:
            raise ProblemFileError(f"coefficients: expected a list of {k} coefficient lists")
        coefficients = []
        for i, comp in enumerate(co):
            if not isinstance(comp, list) or len(comp) != len(supports[i]):
                raise ProblemFileError(
                    f"coefficients[{i}]: expected {len(supports[i])} entries to match supports[{i}]")
            row = []
            for j, z in enumerate(comp):
                if not (isinstance(z, list) and len(z) == 2 and all(_is_num(c) for c in z)):
                    raise ProblemFileError(f"coefficients[{i}][{j}]: expected an [re, im] pair of numbers")
                c = complex(z[0], z[1])
                if c == 0:
                    notes.append(f"coefficients[{i}][{j}] is zero: exponent {list(supports[i][j])} "
                                 f"is absent from f{i + 1}")
                row.append(c)
            coefficients.append(tuple(row))
        coefficients = tuple(coefficients)
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    return ProblemFile(n, k, tuple(supports), coefficients, digest, tuple(notes))


def load_problem(path) -> ProblemFile:
    with open(path, "rb") as fh:
        return parse_problem(fh.read())


# -- rendering ---------------------------------------------------------------

def cnum(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def render_classification(cl: Classification) -> dict:
    ind = cl.independence
    return {
        "verdict": cl.verdict.value,
        "reason": cl.reason.value,
        "independent": None if ind is None else ind.independent,
        "dependence_witness": None if ind is None or ind.witness is None else list(ind.witness),
        "u": None if cl.u is None else list(cl.u),
        "v": None if cl.v is None else list(cl.v),
        "l2_points": None if cl.l2_points is None else [list(p) for p in cl.l2_points],
        "predicted_count": cl.predicted_count,
    }


def _upoly(p: UnivariatePoly) -> list:
    return [cnum(c) for c in p.coeffs]


def render_c1(res: C1Result, predicted: int) -> dict:
    dec = res.decomposition
    count = len(res.points)
    return {
        "decomposition": {
            "u": list(dec.u),
            "v": list(dec.v),
            "p01": _upoly(dec.p01),
            "p02": _upoly(dec.p02),
            "pv2": _upoly(dec.pv2),
        },
        "points": [
            {
                "kappa": [cnum(z) for z in pt.kappa],
                "t0": cnum(pt.t0),
                "multiplicity": pt.multiplicity,
                "residual": pt.residual,
                "verified": pt.verified,
            }
            for pt in res.points
        ],
        "count": count,
        "predicted_count": predicted,
        "match": count == predicted,
    }


def make_report(command: str, digest: str, *, classification=None, c1=None, verification=None,
                lemma_fuzz=None, parameters=None, diagnostics=()) -> dict:
    return {
        "tool_version": __version__,
        "command": command,
        "input_digest": digest,
        "parameters": parameters,
        "classification": classification,
        "c1": c1,
        "verification": verification,
        "lemma_fuzz": lemma_fuzz,
        "diagnostics": list(diagnostics),
    }


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x!r} in report")
    if x == 0:
        x = 0.0  # no negative zero
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """Canonical JSON: insertion-ordered keys, floats with 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath(SCHEMA_NAME).read_text(encoding="utf-8"))
