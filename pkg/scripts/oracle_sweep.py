"""Compare model enumeration against the partial stable and stable model oracles.

    python scripts/oracle_sweep.py --programs 2000 --max-atoms 6 --max-rules 6
"""
import argparse
import random
import time
from dataclasses import dataclass

from mknf.generate import ProgramShape, all_programs, random_program
from mknf.oracles import partial_stable_bruteforce, two_valued_stable_bruteforce
from mknf.qfix import enumerate_models
from mknf.syntax import render_kb


@dataclass
class SweepConfig:
    programs: int = 500
    seed: int = 0
    max_atoms: int = 6
    max_rules: int = 6
    max_head: int = 3
    max_body: int = 2
    exhaustive: int = 1  # also run every program over two atoms with up to two rules


def corpus(cfg: SweepConfig):
    if cfg.exhaustive:
        yield from all_programs(("a", "b"), 2)
    rng = random.Random(cfg.seed)
    shape = ProgramShape(cfg.max_atoms, cfg.max_rules, cfg.max_head, cfg.max_body)
    for _ in range(cfg.programs):
        yield random_program(rng, shape)


def run(cfg: SweepConfig) -> dict:
    n = partial_bad = total_bad = models = 0
    for kb in corpus(cfg):
        n += 1
        mine = enumerate_models(kb)
        models += len(mine)
        if {(m.true, m.possible) for m in mine} != set(partial_stable_bruteforce(kb)):
            partial_bad += 1
            print("partial stable mismatch:\n" + render_kb(kb))
        exact = {m.true for m in mine if m.true == m.possible}
        if exact != set(two_valued_stable_bruteforce(kb)):
            total_bad += 1
            print("stable mismatch:\n" + render_kb(kb))
    return {"programs": n, "models": models, "partial_mismatches": partial_bad, "stable_mismatches": total_bad}


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
