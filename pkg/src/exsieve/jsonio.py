"""JSON shapes for inputs and reports.

Rationals travel as strings in Fraction form ("2/3", "0", "-1/6") so
nothing is lost in transit.  Interval endpoints are serialized as
decimal strings rounded outward, so a printed enclosure is still an
enclosure.  Emission is deterministic: same object, same bytes.

Input documents:

    family  {"space": {"weights": ["1/3", "1/3", "1/3"]},
             "events": [[0, 1], [1, 2]]}
    pmf     {"pmf": {"kind": "explicit", "weights": ["1/2", "0", "0", "1/2"]}}
            {"pmf": {"kind": "geometric", "p": "2/5"}}
            {"pmf": {"kind": "poisson", "lambda": "1"}}

Events are lists of 0-based atom indices; "labels" in "space" is
optional.  parse_document accepts either document kind.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .atoms import AtomDecomposition
from .errors import SchemaError
from .moments import Bracket, CascadeReport, ConvergenceVerdict
from .numerics import IntervalScalar, Rat, Scalar, approx_str, parse_rat
from .sieve import SieveResult
from .space import (
    EXPLICIT,
    GEOMETRIC,
    POISSON,
    BinomialMomentSeq,
    EventFamily,
    ZPlusPmf,
    make_space,
)


def rat_to_json(x: Rat) -> str:
    return str(Fraction(x))


def scalar_to_json(x: Scalar):
    if isinstance(x, IntervalScalar):
        lo, hi = x.to_decimal_strings()
        return {"lo": lo, "hi": hi}
    return rat_to_json(x)


def scalar_approx(x: Scalar) -> str:
    if isinstance(x, IntervalScalar):
        return approx_str(x.midpoint())
    return approx_str(x)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def _parse_rat_field(value, where: str) -> Rat:
    _require(isinstance(value, str), f"{where} must be a rational string like \"2/3\"")
    try:
        return parse_rat(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def parse_family(doc: dict) -> EventFamily:
    _require(isinstance(doc, dict), "family document must be a JSON object")
    _require("space" in doc, "family document needs a \"space\" member")
    _require("events" in doc, "family document needs an \"events\" member")
    space_obj = doc["space"]
    _require(isinstance(space_obj, dict), "\"space\" must be an object")
    weights_obj = space_obj.get("weights")
    _require(isinstance(weights_obj, list) and weights_obj, "\"space.weights\" must be a nonempty array")
    weights = [_parse_rat_field(w, f"space.weights[{i}]") for i, w in enumerate(weights_obj)]
    labels = space_obj.get("labels")
    if labels is not None:
        _require(
            isinstance(labels, list) and all(isinstance(s, str) for s in labels),
            "\"space.labels\" must be an array of strings",
        )
        _require(len(labels) == len(weights), "labels and weights must have equal length")
    space = make_space(weights, labels=labels)
    events_obj = doc["events"]
    _require(isinstance(events_obj, list), "\"events\" must be an array")
    events = []
    for i, ev in enumerate(events_obj):
        _require(isinstance(ev, list), f"events[{i}] must be an array of atom indices")
        for a in ev:
            _require(
                isinstance(a, int) and not isinstance(a, bool) and 0 <= a < space.natoms,
                f"events[{i}] contains an index outside 0..{space.natoms - 1}",
            )
        events.append(ev)
    return EventFamily.from_indices(space, events)


def parse_pmf(doc: dict, precision_bits: int | None = None) -> ZPlusPmf:
    _require(isinstance(doc, dict), "pmf document must be a JSON object")
    _require("pmf" in doc, "pmf document needs a \"pmf\" member")
    obj = doc["pmf"]
    _require(isinstance(obj, dict), "\"pmf\" must be an object")
    kind = obj.get("kind")
    extra = {} if precision_bits is None else {"precision_bits": precision_bits}
    if kind == EXPLICIT:
        weights_obj = obj.get("weights")
        _require(isinstance(weights_obj, list), "explicit pmf needs a \"weights\" array")
        weights = [_parse_rat_field(w, f"pmf.weights[{i}]") for i, w in enumerate(weights_obj)]
        return ZPlusPmf.explicit(weights, **extra)
    if kind == GEOMETRIC:
        _require("p" in obj, "geometric pmf needs a \"p\" member")
        return ZPlusPmf.geometric(_parse_rat_field(obj["p"], "pmf.p"), **extra)
    if kind == POISSON:
        _require("lambda" in obj, "poisson pmf needs a \"lambda\" member")
        return ZPlusPmf.poisson(_parse_rat_field(obj["lambda"], "pmf.lambda"), **extra)
    raise SchemaError(f"unknown pmf kind {kind!r}; expected explicit, geometric, or poisson")


def parse_document(doc: dict, precision_bits: int | None = None):
    """Family or pmf, decided by which member is present."""
    _require(isinstance(doc, dict), "input document must be a JSON object")
    if "pmf" in doc:
        return parse_pmf(doc, precision_bits=precision_bits)
    if "events" in doc or "space" in doc:
        return parse_family(doc)
    raise SchemaError("input document must contain \"pmf\" or \"space\"/\"events\"")


def family_to_json(fam: EventFamily) -> dict:
    return {
        "space": {
            "labels": list(fam.space.labels),
            "weights": [rat_to_json(w) for w in fam.space.weights],
        },
        "events": [list(ev) for ev in fam.events],
    }


def pmf_to_json(pmf: ZPlusPmf) -> dict:
    if pmf.kind == EXPLICIT:
        body = {"kind": EXPLICIT, "weights": [rat_to_json(w) for w in pmf.weights]}
    elif pmf.kind == GEOMETRIC:
        body = {"kind": GEOMETRIC, "p": rat_to_json(pmf.param)}
    else:
        body = {"kind": POISSON, "lambda": rat_to_json(pmf.param)}
    return {"pmf": body}


def decomposition_to_json(dec: AtomDecomposition) -> dict:
    cells = sorted(dec.cells.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    return {
        "cells": [
            {"signature": sorted(sig), "weight": rat_to_json(w)} for sig, w in cells
        ],
        "t": [rat_to_json(x) for x in dec.t],
    }


def sieve_result_to_json(res: SieveResult) -> dict:
    return {
        "k": res.k,
        "n": res.n,
        "skn_prefix": [rat_to_json(s) for s in res.skn_prefix],
        "union_prob": rat_to_json(res.union_prob),
    }


def moments_to_json(seq: BinomialMomentSeq) -> dict:
    return {
        "k_max": seq.k_max,
        "values": [scalar_to_json(v) for v in seq.values],
        "interval_mode": seq.interval_mode,
    }


def bracket_to_json(b: Bracket) -> dict:
    lo, hi = b.enclosure()
    return {
        "k": b.k,
        "d": b.d,
        "r": b.r,
        "target": b.target,
        "lower": scalar_to_json(b.lower),
        "upper": scalar_to_json(b.upper),
        "enclosure": {"lo": rat_to_json(lo), "hi": rat_to_json(hi)},
        "width": rat_to_json(b.width),
        "certified": True,
    }


def verdict_to_json(v: ConvergenceVerdict) -> dict:
    return {"k": v.k, "status": v.status, "witness": v.witness}


def cascade_to_json(rep: CascadeReport) -> dict:
    return {
        "l": rep.l,
        "all_finite": rep.all_finite,
        "entries": [
            {"k": k, "finite": finite, "value": scalar_to_json(value)}
            for k, finite, value in rep.entries
        ],
    }


def dumps(obj) -> str:
    """Deterministic rendering: sorted keys, two-space indent, newline end."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def load_path(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


__all__ = [
    "parse_family",
    "parse_pmf",
    "parse_document",
    "family_to_json",
    "pmf_to_json",
    "decomposition_to_json",
    "sieve_result_to_json",
    "moments_to_json",
    "bracket_to_json",
    "verdict_to_json",
    "cascade_to_json",
    "rat_to_json",
    "scalar_to_json",
    "scalar_approx",
    "dumps",
    "load_path",
]
