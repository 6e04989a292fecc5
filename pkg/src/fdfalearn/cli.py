"""Command-line driver: learn, convert, member, equiv and bench."""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .automata import ba_equivalence, ba_lasso_member
from .corpus import random_ba
from .errors import InputError, LearningTimeout, TeacherAbort
from .formats import parse_ba, parse_fdfa, print_ba, to_dot
from .learn import LEARNERS
from .oracle import BaTeacher, FdfaTeacher
from .translate import fdfa_to_ba
from .words import OmegaWord

EXIT_OK, EXIT_PARSE, EXIT_TIMEOUT, EXIT_ABORT = 0, 2, 3, 4

LEARNER_NAMES = ("tree", "table")
ACCEPTANCES = ("periodic", "syntactic", "recurrent")
APPROXIMATIONS = ("under", "over")

# stats keys in report order; the first group mirrors the benchmark table
STAT_KEYS = ("states", "transitions", "mq", "eq", "time_eq", "time_total", "mq_raw",
             "refinements", "reused", "leading_refinements", "progress_refinements",
             "fdfa_leading", "fdfa_progress", "leading_space", "progress_space")


@dataclass
class RunConfig:
    target: str | None = None
    learner: str = "tree"
    acceptance: str = "periodic"
    approximation: str = "under"
    timeout: float | None = None
    ce_reuse: bool = True
    seed: int = 0
    alphabet: tuple | None = None
    outputs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.timeout is not None and self.timeout <= 0:
            raise InputError("timeout must be positive")
        if self.learner not in LEARNER_NAMES:
            raise InputError(f"unknown learner {self.learner!r}")
        if self.acceptance not in ACCEPTANCES:
            raise InputError(f"unknown acceptance {self.acceptance!r}")
        if self.approximation not in APPROXIMATIONS:
            raise InputError(f"unknown approximation {self.approximation!r}")


def _alphabet(text):
    if text is None:
        return None
    letters = [a for a in text.replace(",", " ").split() if a]
    if len(letters) == 1 and len(letters[0]) > 1:
        letters = list(letters[0])
    return tuple(letters)


def read_ba(path, alphabet=None):
    return parse_ba(Path(path).read_text(), alphabet)


def run_learning(target, cfg: RunConfig):
    """One learning session. Returns (status, learned BA or None, stats)."""
    teacher = FdfaTeacher(BaTeacher(target), cfg.approximation)
    learner = LEARNERS[cfg.learner](teacher, cfg.acceptance, ce_reuse=cfg.ce_reuse, timeout=cfg.timeout)
    try:
        B = learner.learn()
        status = "ok"
    except LearningTimeout:
        B, status = None, "timeout"
    except TeacherAbort:
        B, status = None, "abort"
    return status, B, learner.stats


def format_stats(stats: dict, status: str) -> str:
    lines = [f"status = {status}"]
    for k in STAT_KEYS:
        v = stats[k]
        lines.append(f"{k} = {v:.6f}" if isinstance(v, float) else f"{k} = {v}")
    lines.append("trace = " + ",".join(str(n) for n in stats["trace"]))
    return "\n".join(lines) + "\n"


def cmd_learn(args) -> int:
    cfg = RunConfig(args.target, args.learner, args.acceptance, args.approx, args.timeout,
                    not args.no_ce_reuse, alphabet=_alphabet(args.alphabet))
    target = read_ba(cfg.target, cfg.alphabet)
    status, B, stats = run_learning(target, cfg)
    d = stats.as_dict()
    text = format_stats(d, status)
    if args.stats:
        Path(args.stats).write_text(text)
        Path(args.stats).with_suffix(".json").write_text(json.dumps(dict(d, status=status), indent=2) + "\n")
    else:
        sys.stderr.write(text)
    if B is not None:
        out = print_ba(B)
        if args.out:
            Path(args.out).write_text(out)
        else:
            sys.stdout.write(out)
        if args.dot:
            Path(args.dot).write_text(to_dot(B, "learned"))
    return {"ok": EXIT_OK, "timeout": EXIT_TIMEOUT, "abort": EXIT_ABORT}[status]


def cmd_convert(args) -> int:
    F = parse_fdfa(Path(args.fdfa).read_text())
    B = fdfa_to_ba(F, args.approx)
    out = print_ba(B)
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    if args.dot:
        Path(args.dot).write_text(to_dot(B, "converted"))
    return EXIT_OK


def cmd_member(args) -> int:
    B = read_ba(args.ba)
    w = OmegaWord.parse(args.word)
    print("true" if ba_lasso_member(B, w) else "false")
    return EXIT_OK


def cmd_equiv(args) -> int:
    A = read_ba(args.ba1)
    B = read_ba(args.ba2)
    w = ba_equivalence(A, B)
    print("equal" if w is None else str(w))
    return EXIT_OK


# -- benchmark ----------------------------------------------------------

def config_matrix():
    return [(l, k, ap) for l in LEARNER_NAMES for k in ACCEPTANCES for ap in APPROXIMATIONS]


def random_targets(n, seed, max_states=5, alphabet=("a", "b")):
    """(name, .ba text) pairs; the text form makes them cheap to ship to workers."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        k = rng.randint(1, max_states)
        B = random_ba(rng, k, alphabet, density=rng.choice([1.0, 1.3, 1.6]),
                      accepting=rng.randint(1, max(1, k // 2)))
        out.append((f"random{i:04d}", print_ba(B)))
    return out


def _bench_job(job):
    name, text, alphabet, learner, acceptance, approx, timeout, ce_reuse = job
    target = parse_ba(text, alphabet)
    cfg = RunConfig(None, learner, acceptance, approx, timeout, ce_reuse)
    status, _, stats = run_learning(target, cfg)
    return name, (learner, acceptance, approx), status, stats.as_dict()


def run_bench(targets, alphabet=None, timeout=None, ce_reuse=True, jobs=1):
    """Runs every target under every configuration; results sorted by
    (target name, configuration) regardless of completion order."""
    work = [(name, text, alphabet, l, k, ap, timeout, ce_reuse)
            for name, text in targets for l, k, ap in config_matrix()]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_bench_job, work))
    else:
        results = [_bench_job(j) for j in work]
    return sorted(results, key=lambda r: (r[0], r[1]))


def bench_report(results, timing=True) -> str:
    """Per-configuration sums over solved runs, shaped like the usual
    learning-benchmark table."""
    cols = ["Struct", "Acc", "Approx", "#Unsolved", "#Abort", "#St", "#Tr", "#MQ", "#EQ"]
    if timing:
        cols += ["Time_eq", "Time_total", "EQ%"]
    rows = [cols]
    for cfg in config_matrix():
        mine = [r for r in results if r[1] == cfg]
        solved = [r[3] for r in mine if r[2] == "ok"]
        row = list(cfg) + [
            str(sum(1 for r in mine if r[2] != "ok")),
            str(sum(1 for r in mine if r[2] == "abort")),
            str(sum(s["states"] for s in solved)),
            str(sum(s["transitions"] for s in solved)),
            str(sum(s["mq"] for s in solved)),
            str(sum(s["eq"] for s in solved)),
        ]
        if timing:
            t_eq = sum(s["time_eq"] for s in solved)
            t_all = sum(s["time_total"] for s in solved)
            row += [f"{t_eq:.2f}", f"{t_all:.2f}", f"{100 * t_eq / t_all:.1f}" if t_all else "0.0"]
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(cols))]
    lines = [f"# targets = {len({r[0] for r in results})}"]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    alphabet = _alphabet(args.alphabet)
    if args.random is not None:
        targets = random_targets(args.random, args.seed, args.max_states, alphabet or ("a", "b"))
        alphabet = alphabet or ("a", "b")
    else:
        paths = sorted(Path(args.corpus).glob("*.ba"))
        targets = [(p.name, p.read_text()) for p in paths]
    results = run_bench(targets, alphabet, args.timeout, not args.no_ce_reuse, args.jobs)
    report = bench_report(results, timing=not args.no_timing)
    if args.out:
        Path(args.out).write_text(report)
    else:
        sys.stdout.write(report)
    if args.stats:
        rows = [{"target": n, "learner": c[0], "acceptance": c[1], "approximation": c[2],
                 "status": st, **({k: v for k, v in s.items() if not k.startswith("time")} if args.no_timing else s)}
                for n, c, st, s in results]
        Path(args.stats).write_text(json.dumps(rows, indent=1) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fdfalearn", description="Learn Büchi automata through families of DFAs.")
    sub = p.add_subparsers(dest="command", required=True)

    def positive(text):
        v = float(text)
        if v <= 0:
            raise argparse.ArgumentTypeError("must be positive")
        return v

    q = sub.add_parser("learn", help="learn a BA for the language of a target .ba file")
    q.add_argument("--target", required=True)
    q.add_argument("--learner", choices=LEARNER_NAMES, default="tree")
    q.add_argument("--acceptance", choices=ACCEPTANCES, default="periodic")
    q.add_argument("--approx", choices=APPROXIMATIONS, default="under")
    q.add_argument("--timeout", type=positive)
    q.add_argument("--no-ce-reuse", action="store_true")
    q.add_argument("--alphabet", help="letters, e.g. 'ab' or 'a,b' (default: letters of the target)")
    q.add_argument("--out", help="learned .ba (default: stdout)")
    q.add_argument("--stats", help="stats as key = value text; a .json twin is written next to it")
    q.add_argument("--dot")
    q.set_defaults(func=cmd_learn)

    q = sub.add_parser("convert", help="FDFA file to an under/over-approximating .ba")
    q.add_argument("fdfa")
    q.add_argument("--approx", choices=APPROXIMATIONS, default="under")
    q.add_argument("--out")
    q.add_argument("--dot")
    q.set_defaults(func=cmd_convert)

    q = sub.add_parser("member", help="does a .ba accept u·v^ω (given as u$v)?")
    q.add_argument("ba")
    q.add_argument("word")
    q.set_defaults(func=cmd_member)

    q = sub.add_parser("equiv", help="language equivalence of two .ba files")
    q.add_argument("ba1")
    q.add_argument("ba2")
    q.set_defaults(func=cmd_equiv)

    q = sub.add_parser("bench", help="run the learner matrix over a corpus")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--random", type=int, metavar="N", help="N seeded random targets")
    src.add_argument("--corpus", help="directory of .ba files")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--max-states", type=int, default=5)
    q.add_argument("--alphabet")
    q.add_argument("--timeout", type=positive, default=60.0)
    q.add_argument("--no-ce-reuse", action="store_true")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--no-timing", action="store_true", help="omit wall-clock columns (byte-identical reports)")
    q.add_argument("--out")
    q.add_argument("--stats", help="per-run JSON")
    q.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:  # includes ParseError
        sys.stderr.write(f"error: {e}\n")
        return EXIT_PARSE
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
