"""Command-line front end: ``basis``, ``transition``, ``verify`` and ``scan``.

Exit codes: 0 success, 1 an asserted check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import theorems as T
from .qpoly import QPoly
from .rootsys import RootSystemError
from .spherical import SphElement

SUITES = ("theorem12", "nhalf", "a3", "a4", "mlemmas", "oracles", "kostka",
          "positivity", "d4witness", "all")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    family: Optional[str] = None
    rank: Optional[int] = None
    weight: Optional[tuple] = None
    box: Optional[int] = None
    level: Optional[int] = None
    target: str = "canonical"
    fmt: str = "json"
    workers: int = 1
    suite: str = "all"
    sample: Optional[int] = None
    seed: int = 0
    instances: int = 500
    out: Optional[str] = None


def _parse_weight(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad weight {text!r}: expected comma-separated integers")


def _hecke(cfg: RunConfig):
    if cfg.family is None or cfg.rank is None:
        raise UsageError("--family and --rank are required")
    try:
        return T.context(cfg.family.upper(), cfg.rank)
    except (RootSystemError, ValueError) as e:
        raise UsageError(str(e))


def _weights(cfg: RunConfig, H) -> list:
    if cfg.weight is not None:
        if len(cfg.weight) != H.rs.rank:
            raise UsageError(f"weight {cfg.weight} has length {len(cfg.weight)}, rank is {H.rs.rank}")
        if not H.rs.is_dominant(cfg.weight):
            raise UsageError(f"weight {cfg.weight} is not dominant")
        return [cfg.weight]
    if cfg.box is None:
        raise UsageError("give --weight or --box")
    if cfg.box < 0:
        raise UsageError("--box must be >= 0")
    return T.sample_weights(H.rs, cfg.box, cfg.sample, cfg.seed)


# --- basis ---------------------------------------------------------------------

def cmd_basis(cfg: RunConfig) -> tuple:
    H = _hecke(cfg)
    if cfg.weight is None:
        raise UsageError("basis needs --weight")
    (lam,) = _weights(cfg, H)
    if cfg.level is None or not 1 <= cfg.level <= H.m + 1:
        raise UsageError(f"--level must be in 1..{H.m + 1}")
    el = H.precanonical(lam, cfg.level)
    target = cfg.target.lower()
    if target in ("canonical", "canon"):
        out = el
    elif target in ("std", "standard"):
        out = H.canon_to_std(el)
    elif target.startswith("precanon:"):
        try:
            k = int(target.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"unknown basis {cfg.target!r}")
        if not 1 <= k <= H.m + 1:
            raise UsageError(f"precanon level must be in 1..{H.m + 1}")
        out = H.expand_in_precanonical(el, k)
    else:
        raise UsageError(f"unknown basis {cfg.target!r}")
    return _render_element(H, lam, out, cfg.fmt), 0


def _render_element(H, lam, el: SphElement, fmt: str) -> str:
    if fmt == "pretty":
        return el.pretty(H.rs) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["basis", "weight", "coeff"])
        for mu, p in el.sorted_terms(H.rs):
            w.writerow([str(el.basis), _wstr(mu), " ".join(map(str, p.coeffs))])
        return buf.getvalue()
    obj = el.to_json_obj(H.rs)
    obj = {"lambda": list(lam), **obj}
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _wstr(w) -> str:
    return ",".join(map(str, w))


# --- transition -----------------------------------------------------------------

def _transition_rows(args) -> list:
    family, rank, lam, i = args
    H = T.context(family, rank)
    el = H.transition(lam, i)
    return [(list(lam), list(mu), p.to_json()) for mu, p in el.sorted_terms(H.rs)]


def cmd_transition(cfg: RunConfig) -> tuple:
    H = _hecke(cfg)
    if cfg.level is None or not 1 <= cfg.level <= H.m:
        raise UsageError(f"--level must be in 1..{H.m} (N^{H.m + 1} is canonical; no basis above it)")
    tasks = [(H.rs.family, H.rs.rank, lam, cfg.level) for lam in _weights(cfg, H)]
    rows = [r for chunk in _map(_transition_rows, tasks, cfg.workers) for r in chunk]
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "lambda", "mu", "coeff"])
        for lam, mu, c in rows:
            w.writerow([cfg.level, _wstr(lam), _wstr(mu), " ".join(map(str, c))])
        return buf.getvalue(), 0
    if cfg.fmt == "pretty":
        return "".join(f"[{_wstr(l)}] -> [{_wstr(m)}]: {QPoly(c)}\n" for l, m, c in rows), 0
    return "".join(json.dumps({"i": cfg.level, "lambda": l, "mu": m, "coeff": c},
                              sort_keys=True, separators=(",", ":")) + "\n"
                   for l, m, c in rows), 0


# --- verify / scan ------------------------------------------------------------------

def _run_task(task) -> list:
    kind, family, rank, payload = task
    H = T.context(family, rank)
    if kind == "theorem12":
        return T.verify_theorem12(H, payload)
    if kind == "nhalf":
        lam, levels = payload
        return [T.verify_nhalf(H, lam, i) for i in levels]
    if kind == "a3":
        return T.verify_a3(H, payload)
    if kind == "a4":
        return T.verify_a4(H, payload)
    if kind == "mlemmas":
        lam, levels = payload
        return [r for i in levels for r in T.verify_m_lemmas(H, lam, i)]
    if kind == "reflection":
        roots, mu, k = payload
        return [T.verify_reflection(H, roots, mu, k)]
    if kind == "oracles":
        return T.mucoeff_report(H, payload) + T.mumu_report(H, payload)
    if kind == "kostka":
        return T.kostka_report(H, payload)
    if kind == "positivity":
        lam, levels = payload
        return T.positivity_scan(H, [lam], levels)
    if kind == "d4witness":
        return T.atomic_negativity(H, [payload])
    raise ValueError(kind)


def _systems(cfg: RunConfig, defaults: list) -> list:
    """``[(family, rank, box)]`` from the config or the suite defaults."""
    if cfg.family is not None or cfg.rank is not None:
        if cfg.family is None or cfg.rank is None:
            raise UsageError("--family and --rank go together")
        box = cfg.box if cfg.box is not None else defaults[0][2]
        return [(cfg.family.upper(), cfg.rank, box)]
    if cfg.box is not None:
        return [(f, r, cfg.box) for f, r, _ in defaults]
    return defaults


def reflection_instances(rank: int, count: int, seed: int, family: str = "A") -> list:
    """Random (A, mu, k) with A a subset of the positive roots."""
    rs = T.context(family, rank).rs
    rng = random.Random(seed * 1000 + rank)
    roots = list(rs.positive_roots)
    out = []
    for _ in range(count):
        size = rng.randint(0, min(len(roots), 8))
        A = tuple(sorted(rng.sample(roots, size)))
        mu = tuple(rng.randint(-4, 4) for _ in range(rank))
        out.append((A, mu, rng.randrange(rank)))
    return out


def _suite_tasks(suite: str, cfg: RunConfig) -> list:
    tasks = []
    if suite == "theorem12":
        for f, r, b in _systems(cfg, [("A", 1, 3), ("A", 2, 3), ("A", 3, 3), ("A", 4, 3), ("D", 4, 2)]):
            tasks += [("theorem12", f, r, lam) for lam in T.context(f, r).rs.box(b)]
    elif suite == "nhalf":
        for f, r, b in _systems(cfg, [("A", 2, 3), ("A", 3, 3), ("A", 4, 3)]):
            levels = [cfg.level] if cfg.level else T.nhalf_levels(r)
            tasks += [("nhalf", f, r, (lam, levels)) for lam in T.context(f, r).rs.box(b)]
    elif suite in ("a3", "a4"):
        rank = int(suite[1])
        for f, r, b in _systems(cfg, [("A", rank, 4 if rank == 3 else 2)]):
            tasks += [(suite, f, r, lam) for lam in T.context(f, r).rs.box(b)]
    elif suite == "mlemmas":
        for f, r, b in _systems(cfg, [("A", 3, 2), ("A", 4, 2)]):
            levels = [cfg.level] if cfg.level else T.nhalf_levels(r)
            tasks += [("mlemmas", f, r, (lam, levels)) for lam in T.context(f, r).rs.box(b)]
            tasks += [("reflection", f, r, inst)
                      for inst in reflection_instances(r, cfg.instances, cfg.seed, f)]
    elif suite == "oracles":
        for f, r, b in _systems(cfg, [("A", 2, 3), ("A", 3, 3)]):
            tasks += [("oracles", f, r, lam) for lam in T.context(f, r).rs.box(b)]
    elif suite == "kostka":
        for f, r, b in _systems(cfg, [("A", 1, 3), ("A", 2, 3), ("A", 3, 3), ("A", 4, 3)]):
            tasks += [("kostka", f, r, lam) for lam in T.context(f, r).rs.box(b)]
    elif suite == "positivity":
        for f, r, b in _systems(cfg, [("A", 5, 2)]):
            H = T.context(f, r)
            levels = [cfg.level] if cfg.level else list(range(1, H.m + 1))
            tasks += [("positivity", f, r, (lam, levels))
                      for lam in T.sample_weights(H.rs, b, cfg.sample, cfg.seed)]
    elif suite == "d4witness":
        for f, r, b in _systems(cfg, [("D", 4, 3)]):
            tasks += [("d4witness", f, r, lam) for lam in T.context(f, r).rs.box(b)]
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return tasks


def run_suite(suite: str, cfg: RunConfig) -> list:
    reports = [r for chunk in _map(_run_task, _suite_tasks(suite, cfg), cfg.workers) for r in chunk]
    if suite == "d4witness":
        found = len(reports)
        reports.append(T.VerifyReport("d4_witness", {"negative_instances": found}, found > 0,
                                      None if found else "no negative coefficient", None))
    return reports


def cmd_verify(cfg: RunConfig) -> tuple:
    suites = [s for s in SUITES if s != "all"] if cfg.suite == "all" else [cfg.suite]
    if cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    reports = []
    for s in suites:
        reports += run_suite(s, cfg)
    return _render_reports(reports, cfg.fmt), (1 if T.failed(reports) else 0)


def cmd_scan(cfg: RunConfig) -> tuple:
    if cfg.family is None or cfg.rank is None:
        raise UsageError("scan needs --family and --rank")
    if cfg.box is None:
        raise UsageError("scan needs --box")
    reports = run_suite("positivity", cfg)
    return _render_reports(reports, cfg.fmt), (1 if T.failed(reports) else 0)


def _render_reports(reports, fmt: str) -> str:
    summary = T.summarize(reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["claim", "instance", "status", "asserted"])
        for r in reports:
            w.writerow([r.claim, json.dumps(r.instance, sort_keys=True, separators=(",", ":")),
                        r.status, int(r.asserted)])
        return buf.getvalue()
    if fmt == "pretty":
        lines = [f"{r.status:4}  {r.claim:18} {json.dumps(r.instance, sort_keys=True)}"
                 + ("" if r.passed else f"\n      got:  {r.lhs}\n      want: {r.rhs}")
                 for r in reports]
        for claim, c in summary["summary"].items():
            lines.append(f"{claim}: {c['pass']} pass, {c['fail']} fail")
        return "\n".join(lines) + "\n"
    lines = [r.to_json() for r in reports]
    lines.append(json.dumps(summary, sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def _map(fn, tasks, workers: int) -> list:
    if workers <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


# --- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=str.upper, choices=["A", "D"])
    common.add_argument("--rank", type=int)
    common.add_argument("--weight", type=str, help="comma-separated fundamental-weight coordinates")
    common.add_argument("--box", type=int, help="all dominant weights with coordinates 0..BOX")
    common.add_argument("--level", "--i", dest="level", type=int)
    common.add_argument("--format", dest="fmt", choices=["json", "csv", "pretty"], default="json")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", type=str)

    p = argparse.ArgumentParser(prog="precanon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("basis", parents=[common], help="one pre-canonical basis element")
    b.add_argument("--in", dest="target", default="canonical",
                   help="canonical | std | precanon:K")
    sub.add_parser("transition", parents=[common], help="N^{i+1} in the N^i basis over weights")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--instances", type=int, default=500, help="random reflection instances per rank")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--sample", type=int)
    s = sub.add_parser("scan", parents=[common], help="positivity scan of all transitions")
    s.add_argument("--sample", type=int, help="random subset of the box of this size")
    s.add_argument("--seed", type=int, default=0)
    return p


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(family=ns.family, rank=ns.rank, box=ns.box, level=ns.level, fmt=ns.fmt,
                    workers=ns.workers, out=ns.out)
    if ns.weight is not None:
        cfg.weight = _parse_weight(ns.weight)
    for name in ("target", "suite", "sample", "seed", "instances"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    return cfg


COMMANDS = {"basis": cmd_basis, "transition": cmd_transition, "verify": cmd_verify, "scan": cmd_scan}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2
    try:
        cfg = config_from_args(ns)
        text, code = COMMANDS[ns.command](cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
