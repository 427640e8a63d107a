"""Dimension and shape of the space of linear derivations over many exponent vectors.

Includes mixed vectors such as (2,2,3), where neither classification applies,
and reports whether each basis element keeps every V_k (k <= K) invariant.
"""
import argparse
import itertools
from dataclasses import dataclass

from fermatder.constants import NotInvariantError, restrict_to_vk
from fermatder.linearder import LinearDerivation, classify, linear_derivation_space
from fermatder.ring import RingSpec


@dataclass
class Config:
    n_values: tuple = (3, 4)
    exponents: tuple = (2, 3, 4)
    max_degree: int = 3


def invariant_through(ld: LinearDerivation, K: int) -> int:
    for k in range(1, K + 1):
        try:
            restrict_to_vk(ld, k)
        except NotInvariantError:
            return k - 1
    return K


def main(cfg: Config) -> int:
    print(f"{'m':<16} {'dim':>3}  {'kinds':<28} graded through k")
    for n in cfg.n_values:
        for m in itertools.combinations_with_replacement(cfg.exponents, n):
            for perm in sorted(set(itertools.permutations(m))):
                spec = RingSpec(perm)
                basis = [LinearDerivation(spec, B) for B in linear_derivation_space(spec)]
                kinds = sorted({classify(b).kind for b in basis})
                graded = min(invariant_through(b, cfg.max_degree) for b in basis)
                print(f"{str(perm):<16} {len(basis):>3}  {','.join(kinds):<28} {graded}")
    return 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-degree", type=int, default=Config.max_degree)
    p.add_argument("--n", type=int, nargs="+", default=list(Config.n_values))
    a = p.parse_args()
    raise SystemExit(main(Config(tuple(a.n), Config.exponents, a.max_degree)))
