"""Command line interface: ``yflattice <command> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.  Options may
also be read from a file given as ``@path`` (one option per line).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import boundary, characters, harmonic, lattice, stochastic, suites
from .boundary import SummableWord
from .intervals import value_to_json
from .lattice import LevelCapError, dim, level, martin_kernel, path_count
from .report import Report
from .rng import DEFAULT_SEED
from .words import WordError, parse_word, predecessors, successors

SCHEMA_VERSION = 1
LEVEL_LIMIT = 25
MATRIX_LIMIT = 12
HARMONIC_LIMIT = 14
WALK_LIMIT = 16
CONVERGE_LIMIT = 20000


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    seed: int = DEFAULT_SEED
    threads: int = 1
    options: dict = field(default_factory=dict)


# -- output ---------------------------------------------------------------------

def _emit(cfg: RunConfig, payload: dict, rows: list[dict] | None = None, text: str | None = None):
    if cfg.fmt == "json":
        out = {"schema_version": SCHEMA_VERSION, "command": cfg.command, **payload}
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    elif cfg.fmt == "csv":
        if rows is None:
            rows = [{k: v for k, v in payload.items() if not isinstance(v, (dict, list))}]
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write((text if text is not None else json.dumps(payload, indent=2)) + "\n")


def _rational(text: str, name: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name}: malformed rational {text!r}") from None


def _level_arg(n: int, limit: int, name: str = "n") -> int:
    if n < 0:
        raise UsageError(f"--{name} must be >= 0")
    if n > limit:
        raise UsageError(f"--{name} {n} exceeds the safety limit {limit}")
    return n


# -- commands -------------------------------------------------------------------

def cmd_level(cfg: RunConfig, args) -> int:
    n = _level_arg(args.n, LEVEL_LIMIT)
    words = level(n)
    rows = [{"word": str(w), "dim": dim(w)} for w in words]
    text = "\n".join(str(w) for w in words)
    _emit(cfg, {"n": n, "size": len(words), "words": [str(w) for w in words]}, rows, text)
    return 0


def cmd_cover(cfg: RunConfig, args) -> int:
    v = parse_word(args.word)
    succ = [str(w) for w in sorted(successors(v))]
    pred = [str(w) for w in sorted(predecessors(v))]
    rows = [{"relation": "successor", "word": w} for w in succ] + [{"relation": "predecessor", "word": w} for w in pred]
    text = (f"{v}: {len(succ)} successors, {len(pred)} predecessors\n"
            f"successors: {' '.join(succ)}\npredecessors: {' '.join(pred) or '-'}")
    _emit(cfg, {"word": str(v), "successors": succ, "predecessors": pred}, rows, text)
    return 0


def cmd_dim(cfg: RunConfig, args) -> int:
    u = parse_word(args.source)
    v = parse_word(args.to)
    duv = path_count(u, v)
    k = martin_kernel(u, v)
    payload = {"from": str(u), "to": str(v), "paths": duv, "dim_to": dim(v),
               "kernel": str(k.value)}
    text = str(duv) if not args.kernel else f"d({u},{v}) = {duv}, d({v}) = {dim(v)}, K = {k.value}"
    _emit(cfg, payload, None, text)
    return 0


def cmd_chars(cfg: RunConfig, args) -> int:
    n = _level_arg(args.n, MATRIX_LIMIT)
    m = characters.char_matrix(n, method=args.method, cap=MATRIX_LIMIT)
    reports: list[Report] = []
    if args.check:
        agree = Report(f"four-way agreement at level {n}")
        for method in characters.METHODS:
            other = characters.char_matrix(n, method=method, cap=MATRIX_LIMIT)
            agree.check(other.rows == m.rows, f"{method} differs from {args.method}")
        reports = [agree, characters.verify_inverse(n, cap=MATRIX_LIMIT)]
    ok = all(r.passed for r in reports)
    payload = m.to_json()
    if reports:
        payload["checks"] = [r.to_dict() for r in reports]
        payload["passed"] = ok
    if cfg.fmt == "csv":
        sys.stdout.write(m.to_csv())
    else:
        lines = [f"{u}: " + " ".join(str(x) for x in r) for u, r in zip(m.order, m.rows)]
        lines += [r.summary() for r in reports]
        _emit(cfg, payload, None, "\n".join(lines))
    return 0 if ok else 1


def build_harmonic(kind: str, w: str | None, spec: str | None, tau: str | None) -> harmonic.HarmonicFn:
    if kind == "plancherel":
        phi = harmonic.phi_plancherel()
    elif kind == "type1":
        if w is None:
            raise UsageError("--kind type1 needs --word")
        phi = harmonic.psi_type1(parse_word(w))
    elif kind == "summable":
        if spec is None:
            raise UsageError("--kind summable needs --spec positions=...")
        phi = harmonic.phi_summable(SummableWord.parse(spec))
    else:
        raise UsageError(f"unknown kind {kind!r}")
    if tau is not None:
        t = _rational(tau, "tau")
        if not 0 <= t <= 1:
            raise UsageError("--tau must lie in [0, 1]")
        phi = harmonic.contract(phi, t)
    return phi


def parse_base(text: str) -> harmonic.HarmonicFn:
    """``plancherel``, ``type1:WORD`` or ``summable:positions=...``."""
    kind, _, arg = text.partition(":")
    if kind == "plancherel":
        return harmonic.phi_plancherel()
    if kind == "type1":
        return harmonic.psi_type1(parse_word(arg))
    if kind == "summable":
        return harmonic.phi_summable(SummableWord.parse(arg))
    raise UsageError(f"malformed base {text!r}: expected plancherel, type1:WORD or summable:SPEC")


def _cell(x) -> str:
    j = value_to_json(x)
    return f"[{j['lo']}, {j['hi']}]" if isinstance(j, dict) else j


def cmd_harmonic(cfg: RunConfig, args) -> int:
    phi = build_harmonic(args.kind, args.word, args.spec, args.tau)
    n = _level_arg(args.level, HARMONIC_LIMIT, "level")
    words = level(n)
    vals = phi.level_values(n)
    measure = harmonic.central_measure(phi, n).values
    payload = {"kind": phi.kind, "params": phi.params(), "level": n,
               "values": {str(v): value_to_json(x) for v, x in zip(words, vals)},
               "central_measure": {str(v): value_to_json(x) for v, x in zip(words, measure)}}
    if args.p:
        lab = harmonic.PWordLabel.of(parse_word(args.p))
        payload["p_value"] = {"u0": str(lab), "value": value_to_json(phi.p_value(lab))}
    rows = [{"word": str(v), "value": _cell(x), "central_measure": _cell(m)}
            for v, x, m in zip(words, vals, measure)]
    text = "\n".join(f"{r['word']}\t{r['value']}\t{r['central_measure']}" for r in rows)
    if "p_value" in payload:
        text += f"\np_{payload['p_value']['u0']}: {payload['p_value']['value']}"
    _emit(cfg, payload, rows, text)
    return 0


def cmd_walk(cfg: RunConfig, args) -> int:
    n = _level_arg(args.level, WALK_LIMIT, "level")
    start = parse_word(args.start)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.kind == "plancherel":
        wc = stochastic.WalkConfig(start, n, args.samples, cfg.seed)
        law = stochastic.exact_walk_dist(start, n)
    else:
        if args.tau is None:
            raise UsageError("--kind mixed needs --tau")
        tau = _rational(args.tau, "tau")
        if not 0 <= tau <= 1:
            raise UsageError("--tau must lie in [0, 1]")
        base = parse_base(args.base)
        wc = stochastic.WalkConfig(start, n, args.samples, cfg.seed, "mixed", tau, base)
        law = stochastic.exact_mixed_dist(tau, base, n)
    dist = stochastic.sample_walk(wc, workers=cfg.threads)
    rows = []
    for v, p in law.items():
        f = dist.frequency(v)
        rows.append({"word": str(v), "count": dist.counts.get(v, 0), "frequency": f"{f:.6f}",
                     "exact_probability": str(p), "abs_error": f"{abs(f - float(p)):.6f}"})
    tv = dist.tv_distance(law)
    payload = {"kind": args.kind, "level": n, "samples": args.samples, "seed": cfg.seed,
               "tv_distance": f"{tv:.6f}", "rows": rows}
    text = "\n".join(f"{r['word']}\t{r['count']}\t{r['frequency']}\t{r['exact_probability']}" for r in rows)
    _emit(cfg, payload, rows, text + f"\nTV distance {tv:.6f}")
    return 0


def converge_rows(beta: Fraction, w: SummableWord, u0, n_max: int, stride: int) -> list[dict]:
    """Trajectory of psi_{v(n)}(p_u) for the approximating sequence v(n) of (beta, w)."""
    lab = harmonic.PWordLabel.of(u0)
    target = beta ** lab.essential_rank * boundary.functional_p_value(w, lab.deltas)
    target_f = float(target) if not isinstance(target, boundary.Interval) else float(target.mid)
    pi_w = boundary.pi_value(w)
    pi_w_f = float(pi_w) if not isinstance(pi_w, boundary.Interval) else float(pi_w.mid)
    ns = sorted(set(range(stride, n_max + 1, stride)) | {n_max})
    rows = []
    for n in ns:
        pos = boundary.approx_positions(beta, w, n)
        psi = boundary.psi_float(lab.deltas, pos)
        pi_n = boundary.pi_float(pos)
        rows.append({"n": n, "pi_wn": f"{pi_n:.12g}", "beta_hat": f"{pi_n / pi_w_f:.12g}",
                     "psi_value": f"{psi:.12g}", "target": f"{target_f:.12g}",
                     "abs_error": f"{abs(psi - target_f):.6g}"})
    return rows


def cmd_converge(cfg: RunConfig, args) -> int:
    beta = _rational(args.beta, "beta")
    if not 0 <= beta <= 1:
        raise UsageError("--beta must lie in [0, 1]")
    w = SummableWord.parse(args.word)
    n_max = args.nmax
    if not 1 <= n_max <= CONVERGE_LIMIT:
        raise UsageError(f"--nmax must lie in [1, {CONVERGE_LIMIT}]")
    stride = args.stride or max(1, n_max // 50)
    rows = converge_rows(beta, w, parse_word(args.u), n_max, stride)
    payload = {"beta": str(beta), "word": w.to_spec(), "u": args.u, "rows": rows}
    text = "\n".join(",".join(str(x) for x in r.values()) for r in rows)
    _emit(cfg, payload, rows, "n,pi_wn,beta_hat,psi_value,target,abs_error\n" + text)
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        n = args.nmax
        if args.suite == "all" and n is not None:
            # one --nmax for every suite: clamp to each suite's limit; the fuzzer keeps its trial count
            n = None if name == "inequalities" else min(n, suites.SUITES[name].limit)
        if name == "inequalities" and args.trials is not None:
            n = args.trials
        try:
            reports.append(suites.run_suite(name, n, cfg.seed))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    ok = all(r.passed for r in reports)
    rows = [{"suite": r.name, "passed": r.passed, "checks": r.checked, "failures": r.failure_count}
            for r in reports]
    payload = {"suite": args.suite, "passed": ok, "reports": [r.to_dict() for r in reports]}
    text = "\n".join([r.summary() for r in reports] + [f"  {m}" for r in reports for m in r.failures])
    _emit(cfg, payload, rows, text)
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="64-bit seed (default %(default)s)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for sampling")

    p = argparse.ArgumentParser(prog="yflattice", fromfile_prefix_chars="@",
                                description="Young-Fibonacci lattice toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("level", parents=[common], help="list the words of rank n")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_level)

    s = sub.add_parser("cover", parents=[common], help="successors and predecessors of a word")
    s.add_argument("--word", required=True)
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("dim", parents=[common], help="path count d(u, v) and Martin kernel")
    s.add_argument("--from", dest="source", default="e")
    s.add_argument("--to", required=True)
    s.add_argument("--kernel", action="store_true", help="also print d(v) and K(u, v)")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("chars", parents=[common], help="character matrix of level n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=characters.METHODS, default="product")
    s.add_argument("--check", action="store_true", help="compare all methods and check the inverse")
    s.set_defaults(func=cmd_chars)

    s = sub.add_parser("harmonic", parents=[common], help="evaluate harmonic functions")
    s.add_argument("action", choices=("eval",))
    s.add_argument("--kind", choices=("plancherel", "type1", "summable"), default="plancherel")
    s.add_argument("--word", help="finite word for --kind type1")
    s.add_argument("--spec", help="summable word, e.g. positions=3,7 or positions=1,4,9;tailbound=0.05")
    s.add_argument("--tau", help="apply the contraction C_tau (rational in [0, 1])")
    s.add_argument("--level", type=int, default=4)
    s.add_argument("--p", help="also evaluate on the p-label 1^inf u0 given by this word")
    s.set_defaults(func=cmd_harmonic)

    s = sub.add_parser("walk", parents=[common], help="Monte Carlo growth processes")
    s.add_argument("--kind", choices=("plancherel", "mixed"), default="plancherel")
    s.add_argument("--tau")
    s.add_argument("--base", default="type1:2", help="plancherel | type1:WORD | summable:SPEC")
    s.add_argument("--start", default="e")
    s.add_argument("--level", type=int, default=8)
    s.add_argument("--samples", type=int, default=100_000)
    s.set_defaults(func=cmd_walk)

    s = sub.add_parser("converge", parents=[common], help="approximating-sequence experiment (CSV)")
    s.add_argument("--beta", required=True)
    s.add_argument("--word", required=True, help="summable word spec")
    s.add_argument("--u", default="2", help="p-label core u0")
    s.add_argument("--nmax", type=int, default=2000)
    s.add_argument("--stride", type=int, default=0)
    s.set_defaults(func=cmd_converge)

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", choices=("all", *suites.SUITES), default="all")
    s.add_argument("--nmax", type=int)
    s.add_argument("--trials", type=int, help="instances for the inequality fuzzer")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(args.command, args.format, args.seed, max(1, args.threads), vars(args))
    if not 0 <= cfg.seed < 1 << 64:
        sys.stderr.write("error: --seed must be an unsigned 64-bit integer\n")
        return 2
    try:
        return args.func(cfg, args)
    except (UsageError, WordError, LevelCapError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
