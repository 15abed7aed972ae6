"""Compare head-cut model checking with the approximator-side readings on random KBs.

    python scripts/crosscheck_sweep.py --kbs 2000 --seed 1
"""
import argparse
import random
import time
from dataclasses import dataclass

from mknf.aft import cross_check, extension_cross_check, literal_cross_check
from mknf.generate import ProgramShape, random_kb
from mknf.qfix import candidates, check_model
from mknf.syntax import render_kb


@dataclass
class SweepConfig:
    kbs: int = 500
    seed: int = 0
    max_atoms: int = 5
    max_rules: int = 4
    max_head: int = 3
    max_axioms: int = 2
    show: int = 1


def run(cfg: SweepConfig) -> dict:
    rng = random.Random(cfg.seed)
    shape = ProgramShape(cfg.max_atoms, cfg.max_rules, cfg.max_head, 2)
    readings = {"faithful": cross_check, "extension": extension_cross_check, "literal": literal_cross_check}
    misses = {k: 0 for k in readings}
    shown = {k: 0 for k in readings}
    checked = models = 0
    for _ in range(cfg.kbs):
        kb = random_kb(rng, shape, cfg.max_axioms)
        for p in candidates(kb):
            truth = check_model(kb, p).is_model
            checked += 1
            models += truth
            for name, fn in readings.items():
                if fn(kb, p) != truth:
                    misses[name] += 1
                    if shown[name] < cfg.show:
                        shown[name] += 1
                        print(f"[{name}] head-cut verdict {truth}, partition {p}\n{render_kb(kb)}")
    return {"partitions": checked, "models": models, **{f"{k}_discrepancies": v for k, v in misses.items()}}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    t0 = time.perf_counter()
    for k, v in run(cfg).items():
        print(f"{k}: {v}")
    print(f"elapsed: {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
