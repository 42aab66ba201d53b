#!/usr/bin/env python3
"""Regenerate the shipped classical modular polynomial tables.

Writes one file per prime level in the "[a,b] c" line format (a >= b,
zero coefficients omitted) plus a manifest with SHA-256 hashes.

Requires cypari2 (PARI/GP's polmodular computes the classical Phi_l).

    python3 tools/gen_modpoly.py crates/core/data/modpoly 47
"""
import hashlib
import os
import sys

import cypari2


def main():
    out_dir = sys.argv[1]
    max_level = int(sys.argv[2]) if len(sys.argv) > 2 else 47
    pari = cypari2.Pari()
    pari.allocatemem(2 * 10**9)
    os.makedirs(out_dir, exist_ok=True)
    manifest = []
    for level in pari.primes(pari.primepi(max_level)):
        level = int(level)
        phi = pari("polmodular(%d)" % level)
        lines = ["# classical modular polynomial Phi_%d (PARI/GP polmodular)" % level]
        for a in range(level + 2):
            coeff_x = pari.polcoef(phi, a, "x")
            for b in range(a + 1):
                c = int(pari.polcoef(coeff_x, b, "y"))
                if c != 0:
                    lines.append("[%d,%d] %d" % (a, b, c))
        name = "phi_%d.txt" % level
        data = ("\n".join(lines) + "\n").encode()
        with open(os.path.join(out_dir, name), "wb") as fh:
            fh.write(data)
        manifest.append("%d %s %s" % (level, name, hashlib.sha256(data).hexdigest()))
    with open(os.path.join(out_dir, "MANIFEST"), "w") as fh:
        fh.write("# level file sha256\n")
        fh.write("\n".join(manifest) + "\n")


if __name__ == "__main__":
    main()
