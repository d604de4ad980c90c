"""Command-line front end.

Exit codes are uniform: 0 success/verified, 1 bounded search came back
negative (or "never" for asymptotic pairs), 2 bad input or failed
verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import io as hio
from .analysis import cycle_verify, mixing_decomposition, pipeline
from .denjoy import DEFAULT_COLLAR, build_blowup, interval_orbit_check, obstruction_report, orbit_closure, semiconjugacy_check
from .errors import HFError
from .horseshoe import (
    WordIntervalTable,
    _certify,
    conjugacy_self_test,
    find_horseshoe,
    singleton_rate,
)
from .intervals import Interval, fmt_rat, parse_rat
from .plmap import lap_entropy_estimate, pl_power
from .shift import EPSeq, Word, asymptotic_resolve, graph_is_primitive, power_block_encode

OK, NEGATIVE, INVALID = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    action: str
    map: str | None = None
    cert: str | None = None
    orbit: str | None = None
    model: str | None = None
    graph: str | None = None
    word: str | None = None
    p: str | None = None
    q: str | None = None
    k: int = 2
    alphabet: int = 2
    index: int | None = None
    cycle: str | None = None
    max_power: int = 4
    depth: int = 8
    horizon: int = 32
    samples: int = 1000
    collar: str = fmt_rat(DEFAULT_COLLAR)
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        for name in ("max_power", "depth", "samples", "k", "alphabet"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.horizon < 0:
            raise ValueError("--horizon must be nonnegative")
        if self.format not in ("json", "csv"):
            raise ValueError("--format must be json or csv")


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _need(cfg, *names):
    for n in names:
        if getattr(cfg, n) is None:
            raise ValueError(f"--{n} is required for '{cfg.command} {cfg.action}'")


# -- horseshoe ---------------------------------------------------------------


def cmd_horseshoe_find(cfg: RunConfig) -> int:
    _need(cfg, "map")
    f = hio.load_map(cfg.map)
    cert = find_horseshoe(f, cfg.max_power)
    if cert is None:
        print(f"no horseshoe found for powers 1..{cfg.max_power} (not a proof of absence)", file=sys.stderr)
        return NEGATIVE
    _emit(cfg, hio.dumps(cert.to_json()))
    return OK


def _load_verified(cfg):
    _need(cfg, "map", "cert")
    f = hio.load_map(cfg.map)
    cert = hio.load_cert(cfg.cert)
    return f, cert


def cmd_horseshoe_verify(cfg: RunConfig) -> int:
    f, cert = _load_verified(cfg)
    ok, images = _certify(f, cert)
    out = {"certificate": cert.to_json(), "valid": ok}
    if images is not None:
        out["images"] = [iv.to_json() for iv in images]
    _emit(cfg, hio.dumps(out))
    return OK if ok else INVALID


def cmd_pullback(cfg: RunConfig) -> int:
    _need(cfg, "word")
    f, cert = _load_verified(cfg)
    w = Word.parse(cfg.word, 2)
    J = WordIntervalTable(f, cert)[w]
    _emit(cfg, f"{fmt_rat(J.lo)} {fmt_rat(J.hi)}\n")
    return OK


def cmd_selftest(cfg: RunConfig) -> int:
    f, cert = _load_verified(cfg)
    table = WordIntervalTable(f, cert)
    rep = conjugacy_self_test(f, cert, cfg.depth, samples=min(cfg.samples, 10_000), table=table)
    rate = singleton_rate(f, cert)
    out = rep.to_json()
    out["rate"] = None if rate is None else fmt_rat(rate)
    out["ok"] = rep.ok
    _emit(cfg, hio.dumps(out))
    return OK if rep.ok else INVALID


# -- entropy -----------------------------------------------------------------


def cmd_entropy_laps(cfg: RunConfig) -> int:
    _need(cfg, "map")
    f = hio.load_map(cfg.map)
    rows = []
    for n in range(1, cfg.depth + 1):
        est = lap_entropy_estimate(f, n)
        rows.append({"n": n, "laps": est.laps, "log_laps_over_n_display_only": str(est.estimate)})
    _emit(cfg, _csv(rows) if cfg.format == "csv" else hio.dumps({"rows": rows}))
    return OK


# -- blowup ------------------------------------------------------------------


def _model_checks(model, cfg) -> tuple[dict, bool]:
    semi = semiconjugacy_check(model, cfg.samples, 1)
    orbits = [interval_orbit_check(model, j, cfg.horizon) for j in model.orbit.labels]
    report = {
        "semiconjugacy": semi.to_json(),
        "interval_orbits": {
            "horizon": cfg.horizon,
            "checked": len(orbits),
            "failed": [r.j for r in orbits if not r.ok],
        },
        "total_inserted_length": fmt_rat(sum(model.lengths, Fraction(0))),
        "domain": model.domain.to_json(),
    }
    ok = semi.ok and all(r.ok for r in orbits)
    aperiodic = [j for j in model.orbit.labels if not model.orbit.is_periodic(j)]
    if aperiodic:
        obs = obstruction_report(model, aperiodic[-1], cfg.horizon)
        report["obstruction"] = obs.to_json()
        ok = ok and obs.never_merge
    report["ok"] = ok
    return report, ok


def cmd_blowup(cfg: RunConfig) -> int:
    _need(cfg, "map", "orbit")
    g = hio.load_map(cfg.map)
    seeds, depth = hio.load_orbit_spec(cfg.orbit)
    orbit = orbit_closure(g, seeds, depth)
    model = build_blowup(g, orbit, collar_width=parse_rat(cfg.collar))
    report, ok = _model_checks(model, cfg)
    if cfg.out:
        Path(cfg.out).write_text(hio.dumps(model.to_json()))
        report["model_written_to"] = cfg.out
    sys.stdout.write(hio.dumps(report))
    return OK if ok else INVALID


def cmd_blowup_check(cfg: RunConfig) -> int:
    _need(cfg, "model")
    model = hio.load_model(cfg.model)
    report, ok = _model_checks(model, cfg)
    _emit(cfg, hio.dumps(report))
    return OK if ok else INVALID


def cmd_blowup_obstruction(cfg: RunConfig) -> int:
    _need(cfg, "model")
    model = hio.load_model(cfg.model)
    j = cfg.index if cfg.index is not None else len(model.orbit)
    if j not in model.orbit.labels:
        raise ValueError(f"--index must be in 1..{len(model.orbit)}")
    rep = obstruction_report(model, j, cfg.horizon)
    if cfg.format == "csv":
        _emit(cfg, _csv(rep.to_json()["trail"]))
    else:
        _emit(cfg, hio.dumps(rep.to_json()))
    return OK if rep.never_merge else INVALID


# -- shift -------------------------------------------------------------------


def cmd_shift(cfg: RunConfig) -> int:
    if cfg.action == "asymptotic":
        _need(cfg, "p", "q")
        p, q = EPSeq.parse(cfg.p, cfg.alphabet), EPSeq.parse(cfg.q, cfg.alphabet)
        n = asymptotic_resolve(p, q)
        print("never" if n is None else n)
        return NEGATIVE if n is None else OK
    if cfg.action == "blockcode":
        _need(cfg, "p")
        s = EPSeq.parse(cfg.p, cfg.alphabet)
        enc = power_block_encode(s, cfg.k)
        if enc.m <= 36:
            print(enc)
        else:
            print(f"{list(enc.preperiod)}({list(enc.period)})")
        return OK
    if cfg.action == "primitive":
        _need(cfg, "graph")
        res = graph_is_primitive(hio.load_graph(cfg.graph))
        print(f"k={res.k}" if res.primitive else f"not primitive ({res.reason})")
        return OK
    raise ValueError(f"unknown shift action {cfg.action!r}")


# -- analyze -----------------------------------------------------------------


def _parse_cycle(text: str) -> list[Interval]:
    out = []
    for part in text.split(","):
        lo, sep, hi = part.strip().partition(":")
        if not sep:
            raise ValueError(f"cycle entries look like lo:hi, got {part!r}")
        out.append(Interval(parse_rat(lo), parse_rat(hi)))
    return out


def cmd_analyze(cfg: RunConfig) -> int:
    _need(cfg, "map")
    f = hio.load_map(cfg.map)
    if cfg.action == "pipeline":
        rep = pipeline(f, cfg.max_power, cfg.depth)
        _emit(cfg, hio.dumps(rep))
        if rep["status"] == "inconclusive":
            return NEGATIVE
        return OK if rep["status"] == "certificate found" else INVALID
    if cfg.action == "decompose":
        dec = mixing_decomposition(f)
        _emit(cfg, hio.dumps({"decomposition": None if dec is None else dec.to_json()}))
        return NEGATIVE if dec is None else OK
    if cfg.action == "cycle":
        _need(cfg, "cycle")
        ok = cycle_verify(f, _parse_cycle(cfg.cycle))
        _emit(cfg, hio.dumps({"cycle": cfg.cycle, "verified": ok}))
        return OK if ok else INVALID
    raise ValueError(f"unknown analyze action {cfg.action!r}")


DISPATCH = {
    ("horseshoe", "find"): cmd_horseshoe_find,
    ("horseshoe", "verify"): cmd_horseshoe_verify,
    ("horseshoe", "pullback"): cmd_pullback,
    ("horseshoe", "selftest"): cmd_selftest,
    ("entropy", "laps"): cmd_entropy_laps,
    ("blowup", "build"): cmd_blowup,
    ("blowup", "check"): cmd_blowup_check,
    ("blowup", "obstruction"): cmd_blowup_obstruction,
    ("shift", "asymptotic"): cmd_shift,
    ("shift", "blockcode"): cmd_shift,
    ("shift", "primitive"): cmd_shift,
    ("analyze", "pipeline"): cmd_analyze,
    ("analyze", "decompose"): cmd_analyze,
    ("analyze", "cycle"): cmd_analyze,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(INVALID)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    for flag in ("--map", "--cert", "--orbit", "--model", "--graph", "--word", "--p", "--q", "--cycle", "--out"):
        common.add_argument(flag)
    common.add_argument("--max-power", type=int, default=4)
    common.add_argument("--depth", type=int, default=8)
    common.add_argument("--horizon", type=int, default=32)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--collar", default=fmt_rat(DEFAULT_COLLAR))
    common.add_argument("--k", type=int, default=2, help="block length for shift blockcode")
    common.add_argument("--alphabet", type=int, default=2)
    common.add_argument("--index", type=int, help="1-based orbit label for blowup obstruction")
    common.add_argument("--format", default="json", choices=("json", "csv"))

    parser = _Parser(prog="hfkit", description="Exact horseshoe, blow-up and shift-space toolkit.")
    groups = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    actions = {}
    for command, action in DISPATCH:
        actions.setdefault(command, []).append(action)
    for command, acts in actions.items():
        sub = groups.add_parser(command).add_subparsers(dest="action", required=True, parser_class=_Parser)
        for a in acts:
            sub.add_parser(a, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**{k: v for k, v in vars(args).items()})
        return DISPATCH[(cfg.command, cfg.action)](cfg)
    except (HFError, ValueError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
