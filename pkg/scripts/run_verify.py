"""Run the full verification suite and print one line per check with timings."""
import argparse
import time
from dataclasses import dataclass

from fermatder.suite import SuiteConfig, run_suite


@dataclass
class Config:
    max_degree: int = 6
    seed: int = SuiteConfig.seed


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(max_degree=cfg.max_degree, seed=cfg.seed))
    for r in results:
        print(r.line())
    failed = sum(r.status == "FAIL" for r in results)
    print(f"FAILED={failed} in {time.perf_counter() - t0:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-degree", type=int, default=Config.max_degree)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    raise SystemExit(main(Config(a.max_degree, a.seed)))
