#!/usr/bin/env python3
"""Regenerate and cross-check the bundled knot table.

Builds a PD presentation for every prime knot through 8 crossings from
the construction registries in knothom.tables (twist vectors for the
2-bridge knots, three-branch tangle sums for 8_5/8_15/8_19, braid
closures for the rest), then runs an identification audit before
writing src/knothom/data/knots.tsv:

  * determinant of each diagram matches the catalog value;
  * 2-bridge fractions recomputed from the twist vectors reproduce the
    determinants (numerator of the continued fraction);
  * the branch-fraction formula for the tangle sums reproduces the
    determinants;
  * no entry has the Jones polynomial of a connected sum that fits in
    8 crossings (those are the only composite aliases possible here);
  * Jones polynomials are pairwise distinct mod mirror, so the 35
    entries really are 35 different knots;
  * V(t) = V(1/t) exactly for the seven amphichiral names and for no
    others.

Determinant ties among primes are settled by construction (2-bridge
knots are classified by their fraction) or by the Jones checks above.
The table promises each knot only up to mirror image.

Usage: python3 scripts/make_table.py [-o OUTPUT]
"""

import argparse
from fractions import Fraction
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from knothom.diagram import parse_pd
from knothom.jones import determinant, jones_polynomial, poly_str
from knothom.tables import (BRAID, CROSSINGS, DETERMINANTS, MONTESINOS,
                            RATIONAL, build_pd, knot_names)

# The only connected sums that fit in 8 crossings: crossing number is
# additive under connected sum, so summands come from the 3-to-5
# crossing range.  Dets multiply, Jones multiplies.
COMPOSITES = [
    ("3_1", "3_1"),
    ("3_1", "4_1"),
    ("3_1", "5_1"),
    ("3_1", "5_2"),
    ("4_1", "4_1"),
]

AMPHICHIRAL = {"4_1", "6_3", "8_3", "8_9", "8_12", "8_17", "8_18"}


def mirror_poly(v):
    return {-k: c for k, c in v.items()}


def canon(v):
    a = tuple(sorted(v.items()))
    b = tuple(sorted(mirror_poly(v).items()))
    return min(a, b)


def poly_mul(u, v):
    out = {}
    for ku, cu in u.items():
        for kv, cv in v.items():
            k = ku + kv
            out[k] = out.get(k, 0) + cu * cv
            if out[k] == 0:
                del out[k]
    return out


def vector_fraction(vec):
    """Continued fraction of a twist vector; numerator = determinant."""
    f = Fraction(vec[0])
    for a in vec[1:]:
        f = a + 1 / f
    return f


def branch_fraction(b):
    # integer n = a stack of n vertical half twists = fraction 1/n;
    # a vector branch is the corresponding rational tangle.
    if isinstance(b, int):
        return Fraction(1, b)
    return 1 / vector_fraction(b)


def montesinos_det(branches):
    fracs = [branch_fraction(b) for b in branches]
    total = sum(fracs)
    for f in fracs:
        total *= f.denominator
    assert total.denominator == 1
    return abs(int(total))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    default_out = os.path.join(os.path.dirname(__file__), "..", "src",
                               "knothom", "data", "knots.tsv")
    ap.add_argument("-o", "--output", default=default_out)
    ap.add_argument("--print-jones", action="store_true",
                    help="also print each Jones polynomial")
    args = ap.parse_args()

    names = knot_names()
    table = {}
    jones = {}
    failures = 0

    for name in names:
        pd = build_pd(name)
        dia = parse_pd(pd)
        det = determinant(dia)
        v = jones_polynomial(dia)
        table[name] = pd
        jones[name] = v
        probs = []
        if det != DETERMINANTS[name]:
            probs.append("det %d != %d" % (det, DETERMINANTS[name]))
        if len(dia.components) != 1:
            probs.append("%d components" % len(dia.components))
        if len(dia.crossings) != CROSSINGS[name]:
            probs.append("%d crossings, wanted %d"
                         % (len(dia.crossings), CROSSINGS[name]))
        if name in RATIONAL:
            frac = vector_fraction(RATIONAL[name])
            if frac.numerator != DETERMINANTS[name]:
                probs.append("fraction %s" % frac)
        if name in MONTESINOS:
            md = montesinos_det(MONTESINOS[name])
            if md != DETERMINANTS[name]:
                probs.append("branch det %d" % md)
        if name in BRAID:
            word, _ = BRAID[name]
            if len(word) != CROSSINGS[name]:
                probs.append("braid length %d" % len(word))
        sym = v == mirror_poly(v)
        if sym != (name in AMPHICHIRAL):
            probs.append("chirality: V mirror-symmetric=%s" % sym)
        status = "ok" if not probs else "FAIL " + "; ".join(probs)
        failures += bool(probs)
        print("%-5s det=%-3d %s" % (name, det, status))
        if args.print_jones:
            print("      V = %s" % poly_str(v))

    # Composite aliases: entries identified by elimination (the tangle
    # sums and braid closures) must not carry the Jones polynomial of a
    # connected sum that fits in 8 crossings.  2-bridge entries are
    # prime by classification, which matters: V(8_9) really does equal
    # V(4_1)^2, a standard example of Jones not seeing primeness.
    comp_polys = []
    for a, b in COMPOSITES:
        for va in (jones[a], mirror_poly(jones[a])):
            for vb in (jones[b], mirror_poly(jones[b])):
                comp_polys.append((a + "#" + b, canon(poly_mul(va, vb))))
    assert canon(jones["8_9"]) == canon(poly_mul(jones["4_1"], jones["4_1"]))
    for name in names:
        if name in RATIONAL:
            continue
        for label, cp in comp_polys:
            if canon(jones[name]) == cp:
                print("FAIL %s matches composite %s" % (name, label))
                failures += 1

    # pairwise distinctness mod mirror
    seen = {}
    for name in names:
        key = canon(jones[name])
        if key in seen:
            print("FAIL %s and %s share a Jones polynomial"
                  % (seen[key], name))
            failures += 1
        seen[key] = name

    if failures:
        print("%d failures; table not written" % failures)
        return 1

    out = os.path.abspath(args.output)
    os.makedirs(os.path.dirname(out), exist_ok=True)
    with open(out, "w") as fh:
        fh.write("# prime knots through 8 crossings, name <TAB> PD, "
                 "each up to mirror\n")
        for name in names:
            fh.write("%s\t%s\n" % (name, table[name]))
    print("wrote %d knots to %s" % (len(names), out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
