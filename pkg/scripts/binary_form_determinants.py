"""Table of det([d|W_k]) for the rotation example d = I + rotation(x2, x3) on B_3^2.

W_k is either the binary forms in x2, x3 acted on without reduction, or the full
space V_k of normal monomials. Exact values are printed; both must be nonzero.
"""
import argparse
from dataclasses import dataclass

from fermatder.constants import binary_forms_basis, restrict_to_span, restrict_to_vk, rotation_example
from fermatder.exactla import det


@dataclass
class Config:
    max_degree: int = 10


def main(cfg: Config) -> int:
    d = rotation_example()
    print(f"{'k':>3}  {'dim V_k':>7}  {'det on binary forms':<28} det on V_k")
    ok = True
    for k in range(1, cfg.max_degree + 1):
        binary = det(restrict_to_span(d, binary_forms_basis(k), reduce=False))
        vk = restrict_to_vk(d, k)
        full = det(vk.matrix)
        ok &= bool(binary) and bool(full)
        print(f"{k:>3}  {vk.dim:>7}  {str(binary):<28} {full}")
    print("ALL_NONZERO" if ok else "ZERO_FOUND")
    return 0 if ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-degree", type=int, default=Config.max_degree)
    raise SystemExit(main(Config(p.parse_args().max_degree)))
