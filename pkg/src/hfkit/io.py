"""JSON readers and writers for maps, certificates, orbits, models and graphs.

Rationals are always strings (``"p/q"`` or ``"p"``).  Readers report the line
of the offending token; writers use sorted keys so output is byte-stable.
"""

from __future__ import annotations

import json
from json.decoder import scanstring
from json.scanner import py_make_scanner
from pathlib import Path

from .denjoy import BlowupModel, OrbitSet, build_blowup
from .errors import ParseError
from .horseshoe import HorseshoeCert
from .intervals import Interval, fmt_rat, parse_rat
from .plmap import PLMap
from .shift import LabeledGraph


class _Located(str):
    """A decoded JSON string that remembers where its token started."""

    pos: int


def _loads_located(text: str):
    decoder = json.JSONDecoder()

    def parse_string(s, end, strict):
        value, new_end = scanstring(s, end, strict)
        out = _Located(value)
        out.pos = end - 1
        return out, new_end

    decoder.parse_string = parse_string
    decoder.scan_once = py_make_scanner(decoder)
    return decoder.decode(text)


class _Doc:
    def __init__(self, text: str, source: str | None = None):
        self.text = text
        self.source = source
        try:
            self.data = _loads_located(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, source) from None

    def line_of(self, token) -> int | None:
        pos = getattr(token, "pos", None)
        return None if pos is None else self.text.count("\n", 0, pos) + 1

    def fail(self, msg, token=None):
        raise ParseError(msg, self.line_of(token), self.source)

    def rat(self, token, anchor=None):
        # non-string tokens carry no position; report the anchor's line instead
        if isinstance(token, bool) or not isinstance(token, (str, int)):
            self.fail(f"expected a rational string, got {token!r}", anchor)
        if isinstance(token, int):
            return parse_rat(str(token))
        try:
            return parse_rat(token)
        except ParseError as e:
            self.fail(str(e), token)

    def get(self, obj, key, kind=None):
        if not isinstance(obj, dict) or key not in obj:
            self.fail(f"missing key {key!r}")
        value = obj[key]
        if kind is not None and not isinstance(value, kind):
            k = next((k for k in obj if k == key), None)
            self.fail(f"key {key!r} has the wrong type", k)
        return value

    def interval(self, pair):
        if not isinstance(pair, list) or len(pair) != 2:
            self.fail(f"expected [lo, hi], got {pair!r}", pair[0] if pair else None)
        lo, hi = self.rat(pair[0], pair[1]), self.rat(pair[1], pair[0])
        if lo > hi:
            self.fail("interval has lo > hi", pair[0])
        return Interval(lo, hi)


def _read_text(path) -> tuple[str, str]:
    p = Path(path)
    return p.read_text(), str(p)


def _map_from(doc: _Doc, obj) -> PLMap:
    bps = doc.get(obj, "breakpoints", list)
    if len(bps) < 2:
        doc.fail("a map needs at least two breakpoints")
    pts = []
    for bp in bps:
        if not isinstance(bp, list) or len(bp) != 2:
            doc.fail(f"breakpoint must be [x, y], got {bp!r}")
        x, y = doc.rat(bp[0], bp[1]), doc.rat(bp[1], bp[0])
        if pts and not pts[-1][0] < x:
            doc.fail(f"breakpoint x-coordinates must increase strictly ({fmt_rat(pts[-1][0])} then {fmt_rat(x)})", bp[0])
        pts.append((x, y))
    return PLMap(pts)


def map_from_json(text: str, source: str | None = None) -> PLMap:
    doc = _Doc(text, source)
    return _map_from(doc, doc.data)


def load_map(path) -> PLMap:
    return map_from_json(*_read_text(path))


def map_to_json(m: PLMap) -> dict:
    return {"breakpoints": [[fmt_rat(x), fmt_rat(y)] for x, y in m.breakpoints]}


def cert_from_json(text: str, source: str | None = None) -> HorseshoeCert:
    doc = _Doc(text, source)
    r = doc.get(doc.data, "r")
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        doc.fail(f"r must be a positive integer, got {r!r}")
    J0 = doc.interval(doc.get(doc.data, "J0", list))
    J1 = doc.interval(doc.get(doc.data, "J1", list))
    return HorseshoeCert(r, J0, J1)


def load_cert(path) -> HorseshoeCert:
    return cert_from_json(*_read_text(path))


def orbit_spec_from_json(text: str, source: str | None = None) -> tuple[list, int]:
    """``{"seeds": [...], "preimage_depth": d}`` -> (seeds, d)."""
    doc = _Doc(text, source)
    seeds = [doc.rat(s) for s in doc.get(doc.data, "seeds", list)]
    depth = doc.data.get("preimage_depth", 0)
    if isinstance(depth, bool) or not isinstance(depth, int) or depth < 0:
        doc.fail(f"preimage_depth must be a nonnegative integer, got {depth!r}")
    return seeds, depth


def load_orbit_spec(path):
    return orbit_spec_from_json(*_read_text(path))


def model_from_json(text: str, source: str | None = None) -> BlowupModel:
    """Rebuild a model from its base map, orbit table and collar width."""
    doc = _Doc(text, source)
    g = _map_from(doc, doc.get(doc.data, "base", dict))
    width = doc.rat(doc.get(doc.data, "collar_width"))
    rows = doc.get(doc.data, "orbit", list)
    pts, succ, signs, depths, lengths = [], [], [], [], []
    for k, row in enumerate(rows, start=1):
        idx = doc.get(row, "index", int)
        if idx != k:
            doc.fail(f"orbit rows must be numbered 1..n in order; found {idx} at position {k}")
        pts.append(doc.rat(doc.get(row, "z")))
        succ.append(doc.get(row, "next", int))
        sign = doc.get(row, "sign", str)
        if sign not in ("+", "-"):
            doc.fail(f"sign must be '+' or '-', got {sign!r}", sign)
        signs.append(1 if sign == "+" else -1)
        depths.append(row.get("depth", 0))
        lengths.append(doc.rat(doc.get(row, "length")))
    orbit = OrbitSet(tuple(pts), tuple(succ), tuple(signs), tuple(depths))
    model = build_blowup(g, orbit, lengths, width)
    if "lifted" in doc.data and _map_from(doc, doc.data["lifted"]) != model.lifted:
        doc.fail("stored lifted map does not match the rebuilt model")
    return model


def load_model(path) -> BlowupModel:
    return model_from_json(*_read_text(path))


def graph_from_json(text: str, source: str | None = None) -> LabeledGraph:
    doc = _Doc(text, source)
    n = doc.get(doc.data, "vertices", int)
    edges = []
    for e in doc.get(doc.data, "edges", list):
        if not isinstance(e, list) or len(e) != 3:
            doc.fail(f"edge must be [from, to, label], got {e!r}")
        edges.append((e[0], e[1], e[2]))
    try:
        return LabeledGraph(n, tuple(edges))
    except ValueError as err:
        doc.fail(str(err))


def load_graph(path) -> LabeledGraph:
    return graph_from_json(*_read_text(path))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
