"""Constants of alpha*I + d_s for the nilpotent skew families, with timings."""
import argparse
import time
from dataclasses import dataclass

from fermatder.constants import build_even_family, build_odd_family, kernel_up_to_degree
from fermatder.exactla import Matrix, is_nilpotent
from fermatder.linearder import LinearDerivation


@dataclass
class Config:
    odd: tuple = (3, 5, 7)
    even: tuple = (4, 6)
    alpha: int = 1
    max_degree: int = 6


def main(cfg: Config) -> int:
    ok = True
    for label, build, sizes in (("odd", build_odd_family, cfg.odd), ("even", build_even_family, cfg.even)):
        for n in sizes:
            d_s = build(n)
            fld = d_s.spec.field
            d = LinearDerivation(d_s.spec, d_s.matrix + Matrix.scalar(fld, n, cfg.alpha))
            t0 = time.perf_counter()
            rep = kernel_up_to_degree(d, cfg.max_degree)
            dt = time.perf_counter() - t0
            ok &= rep.trivial
            print(f"{label:<4} n={n} field={fld.conductor:<3} nilpotency={is_nilpotent(d_s.matrix)[1]} "
                  f"{rep.lines()[-1]:<18} {dt:6.2f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-degree", type=int, default=Config.max_degree)
    p.add_argument("--alpha", type=int, default=Config.alpha)
    a = p.parse_args()
    raise SystemExit(main(Config(alpha=a.alpha, max_degree=a.max_degree)))
