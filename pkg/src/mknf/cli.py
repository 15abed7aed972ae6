"""Command-line front end: ``mknf check|models|wellfounded|headcuts|oracle``.

Exit codes: 0 success / model, 1 negative verdict, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import aft, qfix
from .entailment import SIGNATURE_CAP
from .headcut import enumerate_headcuts
from .oracles import partial_stable_bruteforce
from .partition import Partition, is_saturated, parse_pair
from .qfix import KA_CAP, CapExceeded, Status, check_model, enumerate_models
from .syntax import KnowledgeBase, ParseError, parse_kb

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    kb_path: Path
    partition_path: Optional[Path] = None
    pair_path: Optional[Path] = None
    output_format: str = "human"
    ka_cap: int = KA_CAP
    sig_cap: int = SIGNATURE_CAP
    jobs: int = 1

    def __post_init__(self):
        if self.ka_cap <= 0 or self.sig_cap <= 0:
            raise InputError("caps must be positive")
        if self.jobs < 0:
            raise InputError("--jobs must be non-negative")


def _read(path: Path, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {what} {path}: {e.strerror or e}") from None


def load_kb(cfg: RunConfig) -> KnowledgeBase:
    text = _read(cfg.kb_path, "knowledge base")
    try:
        kb = parse_kb(text)
    except ParseError as e:
        raise InputError(f"{cfg.kb_path}:{e}") from None
    if len(kb.signature) > cfg.sig_cap:
        raise InputError(f"signature has {len(kb.signature)} atoms, cap is {cfg.sig_cap}")
    return kb


def load_partition(cfg: RunConfig, kb: KnowledgeBase, path: Optional[Path] = None) -> Partition:
    path = path or cfg.partition_path
    if path is None:
        raise InputError("this command needs --partition")
    try:
        t, p = parse_pair(_read(path, "partition"))
        return Partition(t, p, kb.ka)
    except (ParseError, ValueError) as e:
        raise InputError(f"{path}: {e}") from None


def _ordered(atoms, ka) -> list:
    return [a for a in ka if a in atoms]


def _split(part: Partition, ka) -> dict:
    return {
        "true": _ordered(part.true, ka),
        "undef": _ordered(part.undefined, ka),
        "false": [a for a in ka if a not in part.possible],
    }


def _emit(cfg: RunConfig, data: dict, human: str):
    if cfg.output_format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(human)


def _fmt_set(atoms, ka) -> str:
    return "{" + ", ".join(_ordered(atoms, ka)) + "}"


# ---------------------------------------------------------------------------

def cmd_check(cfg: RunConfig) -> int:
    kb = load_kb(cfg)
    part = load_partition(cfg, kb)
    v = check_model(kb, part)
    data = {
        "status": v.status.value,
        "saturation": None if v.saturation is None else {
            "saturated": v.saturation.saturated,
            "clause": v.saturation.clause,
            "witness": v.saturation.witness,
        },
        "cuts_checked": v.cuts_checked,
        "witness_cut": None if v.cut is None else [list(p) for p in v.cut],
        "lfp": None if v.lfp is None else _ordered(v.lfp, kb.ka),
    }
    lines = [f"status: {v.status.value}", v.saturation.describe(), f"head-cuts checked: {v.cuts_checked}"]
    if v.cut is not None:
        lines.append(f"failing head-cut: {v.cut}")
        lines.append(f"least fixpoint: {_fmt_set(v.lfp, kb.ka)} != P = {_fmt_set(part.possible, kb.ka)}")
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK if v.is_model else EXIT_NO


def cmd_models(cfg: RunConfig) -> int:
    kb = load_kb(cfg)
    try:
        models = enumerate_models(kb, cfg.ka_cap, cfg.jobs)
    except CapExceeded as e:
        raise InputError(str(e)) from None
    data = {"models": [_split(m, kb.ka) for m in models], "candidates_checked": 3 ** len(kb.ka)}
    lines = [f"{len(models)} model(s) among {data['candidates_checked']} candidate partitions"]
    for m in models:
        s = _split(m, kb.ka)
        lines.append(f"  true: {{{', '.join(s['true'])}}}  undef: {{{', '.join(s['undef'])}}}  false: {{{', '.join(s['false'])}}}")
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def cmd_wellfounded(cfg: RunConfig) -> int:
    kb = load_kb(cfg)
    if not kb.is_normal:
        raise InputError("wellfounded needs a normal knowledge base (single-atom heads)")
    app = aft.Approximator(kb)
    wf = app.well_founded()
    wf_model = wf.consistent and app.check_model(wf)
    data = {
        "well_founded": {"lo": _ordered(wf.lo, kb.ka), "hi": _ordered(wf.hi, kb.ka)},
        "consistent": wf.consistent,
        "model": wf_model,
    }
    lines = [
        f"well-founded pair: ({_fmt_set(wf.lo, kb.ka)}, {_fmt_set(wf.hi, kb.ka)})",
        f"passes model check: {'yes' if wf_model else 'no'}",
    ]
    if cfg.pair_path is not None:
        try:
            lo, hi = parse_pair(_read(cfg.pair_path, "pair"))
        except ParseError as e:
            raise InputError(f"{cfg.pair_path}: {e}") from None
        pair = aft.LatticePair(lo, hi)
        stable = app.is_stable_fixpoint(pair)
        model = pair.consistent and app.check_model(pair)
        data["pair"] = {
            "lo": _ordered(lo, kb.ka), "hi": _ordered(hi, kb.ka),
            "stable_fixpoint": stable, "model": model,
        }
        lines.append(f"pair ({_fmt_set(lo, kb.ka)}, {_fmt_set(hi, kb.ka)}): "
                     f"stable fixpoint: {'yes' if stable else 'no'}, model: {'yes' if model else 'no'}")
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def cmd_headcuts(cfg: RunConfig) -> int:
    kb = load_kb(cfg)
    part = load_partition(cfg, kb)
    sat = is_saturated(kb, part)
    if not sat:
        data = {"saturated": False, "clause": sat.clause, "witness": sat.witness}
        _emit(cfg, data, f"{sat.describe()} (clause {sat.clause})")
        return EXIT_NO
    cuts = list(enumerate_headcuts(kb, part))
    data = {"saturated": True, "headcuts": [[list(p) for p in c] for c in cuts]}
    _emit(cfg, data, "\n".join(str(c) for c in cuts) if cuts else "EMPTY")
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    kb = load_kb(cfg)
    if kb.ontology:
        raise InputError("oracle comparison needs an empty ontology")
    try:
        engine = enumerate_models(kb, cfg.ka_cap, cfg.jobs)
    except CapExceeded as e:
        raise InputError(str(e)) from None
    mine = {(m.true, m.possible) for m in engine}
    theirs = set(partial_stable_bruteforce(kb, cfg.ka_cap))

    def show(pairs):
        return [_split(Partition(t, p), kb.ka) for t, p in sorted(pairs, key=lambda x: (sorted(x[0]), sorted(x[1])))]

    data = {
        "agree": mine == theirs,
        "models": len(theirs),
        "engine_only": show(mine - theirs),
        "oracle_only": show(theirs - mine),
    }
    lines = [f"engine: {len(mine)} model(s), partial-stable oracle: {len(theirs)}"]
    if mine == theirs:
        lines.append("agree")
    else:
        lines += [f"  engine only: {s}" for s in data["engine_only"]]
        lines += [f"  oracle only: {s}" for s in data["oracle_only"]]
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK if mine == theirs else EXIT_NO


COMMANDS = {
    "check": cmd_check,
    "models": cmd_models,
    "wellfounded": cmd_wellfounded,
    "headcuts": cmd_headcuts,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mknf", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--kb", required=True, type=Path, help="knowledge base file")
    ap.add_argument("--partition", type=Path, help="partition file: 'T: a, b. P: a, b, c.'")
    ap.add_argument("--pair", type=Path, help="lattice pair file, same format as a partition")
    ap.add_argument("--format", choices=("human", "json"), default="human")
    ap.add_argument("--ka-cap", type=int, default=KA_CAP)
    ap.add_argument("--sig-cap", type=int, default=SIGNATURE_CAP)
    ap.add_argument("--jobs", type=int, default=None, help="worker processes, 0 = one per CPU (env MKNF_JOBS)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        jobs = args.jobs if args.jobs is not None else int(os.environ.get("MKNF_JOBS", "1"))
        cfg = RunConfig(args.kb, args.partition, args.pair, args.format, args.ka_cap, args.sig_cap, jobs)
        return COMMANDS[args.command](cfg)
    except (InputError, ValueError) as e:
        print(f"mknf: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
