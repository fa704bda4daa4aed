#!/usr/bin/env python3
"""Arbitrary-precision reference values for J0, J1, Y0, Y1.

Evaluates mpmath at 40 significant digits on 2000 log-spaced double
arguments in (1e-2, 1000] and rounds each result to the nearest double.
The arguments are written with repr() so they parse back bit-exactly.

Usage: python3 tools/bessel_oracle.py > crates/core/tests/data/bessel_reference.csv
"""
import mpmath as mp

mp.mp.dps = 40
N = 2000
LO, HI = -2.0, 3.0

print("x,j0,j1,y0,y1")
for i in range(N):
    # i = 0 is excluded so the range is (1e-2, 1e3] with the top endpoint hit exactly.
    x = 10.0 ** (LO + (HI - LO) * (i + 1) / N)
    xm = mp.mpf(x)
    vals = [mp.besselj(0, xm), mp.besselj(1, xm), mp.bessely(0, xm), mp.bessely(1, xm)]
    print(",".join([repr(x)] + [repr(float(v)) for v in vals]))
