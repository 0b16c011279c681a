#!/usr/bin/env python3
"""Writes b-file fixtures for the OEIS cross-validation tests.

Values come from closed-form sums, never from the three-term recurrences
used by the library, so the comparison is between independent routes.
"""
import os
import sys
from math import comb, factorial

N = 150
OUT = sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/data/bfiles"


def derangements(n):
    # n! * sum_{k<=n} (-1)^k / k!
    return sum((-1) ** k * (factorial(n) // factorial(k)) for k in range(n + 1))


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def motzkin(n):
    return sum(comb(n, 2 * k) * catalan(k) for k in range(n // 2 + 1))


def fine_offset0(n):
    # A000957(n): 0, 1, 0, 1, 2, 6, ...; uses C_m = 2 F_m + F_{m-1}
    f = [1]  # indexing with f_0 = 1
    for m in range(1, n + 1):
        f.append((catalan(m) - f[m - 1]) // 2)
    return 0 if n == 0 else f[n - 1]


def franel(n):
    return sum(comb(n, k) ** 3 for k in range(n + 1))


def domb(n):
    return sum(comb(n, k) ** 2 * comb(2 * k, k) * comb(2 * (n - k), n - k) for k in range(n + 1))


SEQS = {
    "A000166": ("Derangements", derangements),
    "A001006": ("Motzkin numbers", motzkin),
    "A000957": ("Fine's sequence", fine_offset0),
    "A000172": ("Franel numbers", franel),
    "A002895": ("Domb numbers", domb),
    "A000108": ("Catalan numbers", catalan),
    "A000984": ("Central binomial coefficients", lambda n: comb(2 * n, n)),
    "A001764": ("Fuss-Catalan p=3", lambda n: comb(3 * n, n) // (2 * n + 1)),
}

os.makedirs(OUT, exist_ok=True)
for aid, (title, fn) in SEQS.items():
    with open(os.path.join(OUT, f"b{aid[1:]}.txt"), "w") as fh:
        fh.write(f"# {aid} {title}, n = 0..{N - 1}\n")
        fh.write("# generated locally from a closed-form sum by scripts/gen_bfiles.py\n")
        for n in range(N):
            fh.write(f"{n} {fn(n)}\n")
