"""Homology of cobar constructions and twisted tensor products for a few small spaces.

    python3 scripts/cobar_tables.py --degree 6
"""
from __future__ import annotations

import argparse

from mstruct.cobar import Coalgebra, canonical_twisting, cobar, twisted_tensor
from mstruct.simpchain import canonical_mstructure, moore, product_set, sphere_minimal
from mstruct.zmod import FreeComplex, homology


def _cp2():
    C = FreeComplex({0: ["p"], 2: ["a"], 4: ["b"]})
    copr = {"p": {("p", "p"): 1}, "a": {("p", "a"): 1, ("a", "p"): 1},
            "b": {("p", "b"): 1, ("b", "p"): 1, ("a", "a"): 1}}
    return Coalgebra(C, lambda x: copr[x], {"p": 1}, name="CP2 (cellular)")


def spaces(degree):
    def simp(X):
        return Coalgebra.from_mcoalgebra(canonical_mstructure(X, 2, degree + 2))
    yield "S2", simp(sphere_minimal(2))
    yield "S3", simp(sphere_minimal(3))
    yield "S4", simp(sphere_minimal(4))
    yield "S2xS2", simp(product_set(sphere_minimal(2), sphere_minimal(2), min(degree + 1, 5)))
    yield "M(Z/2,2)", simp(moore(2, 2))
    yield "CP2", _cp2()


def _row(C, top):
    H = homology(C, range(top + 1))
    return [str(H[n]) for n in range(top + 1)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=5)
    args = ap.parse_args()
    top = args.degree
    print(f"{'space':10s} {'complex':8s} " + " ".join(f"{n:>6d}" for n in range(top + 1)))
    for name, co in spaces(top):
        # the top built degree has no incoming boundaries, so build one past it
        d = min(top, 4) if name == "S2xS2" else top
        Om = cobar(co, d + 1)
        T = twisted_tensor(co, canonical_twisting(Om), d + 1)
        for label, C in (("ΩC", Om.complex), ("C⊗ΩC", T)):
            print(f"{name:10s} {label:8s} " + " ".join(f"{h:>6s}" for h in _row(C, d)))


if __name__ == "__main__":
    main()
