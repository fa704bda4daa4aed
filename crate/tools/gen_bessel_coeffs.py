#!/usr/bin/env python3
"""Generate Chebyshev coefficient tables for the Bessel kernels.

Writes crates/core/src/specfun/coeffs.rs. Arguments are split into three
regions, each expanded in a variable mapped onto [-1, 1]:

  small  0 < x <= 8    w = (x/8)^2 in [0, 1]       regular parts of J0, J1, Y0, Y1
  mid    8 < x <= 16   u = (8/x)^2 in [1/4, 1]     modulus/phase auxiliaries P, Q
  far    x > 16        u = (8/x)^2 in (0, 1/4]     modulus/phase auxiliaries P, Q

Each series is truncated once the coefficients drop below 1e-18.

Usage: python3 tools/gen_bessel_coeffs.py > crates/core/src/specfun/coeffs.rs
"""
import mpmath as mp

mp.mp.dps = 50
CUTOFF = mp.mpf("1e-18")
NODES = 48


def chebyshev(f, lo, hi):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    nodes = [mp.cos(mp.pi * (j + mp.mpf(1) / 2) / NODES) for j in range(NODES)]
    vals = [f((lo + hi) / 2 + (hi - lo) / 2 * t) for t in nodes]
    out = []
    for k in range(NODES):
        s = mp.fsum(vals[j] * mp.cos(mp.pi * k * (j + mp.mpf(1) / 2) / NODES) for j in range(NODES))
        out.append(2 * s / NODES)
    out[0] /= 2
    last = max(i for i, c in enumerate(out) if abs(c) > CUTOFF)
    return out[: last + 1]


def aux(n, x):
    chi = x - (2 * n + 1) * mp.pi / 4
    a = mp.sqrt(mp.pi * x / 2)
    j, y = mp.besselj(n, x), mp.bessely(n, x)
    return a * (j * mp.cos(chi) + y * mp.sin(chi)), a * (y * mp.cos(chi) - j * mp.sin(chi))


def xw(w):
    return 8 * mp.sqrt(w)


def xu(u):
    return 8 / mp.sqrt(u)


J, Y, LOG = mp.besselj, mp.bessely, mp.log
SMALL = [
    ("J0_SMALL", "J0(x)", lambda w: J(0, xw(w))),
    ("J1_SMALL", "J1(x) / x", lambda w: J(1, xw(w)) / xw(w)),
    ("Y0_SMALL", "Y0(x) - (2/pi) ln(x) J0(x)", lambda w: Y(0, xw(w)) - 2 / mp.pi * LOG(xw(w)) * J(0, xw(w))),
    ("Y1_SMALL", "(Y1(x) - (2/pi) ln(x) J1(x) + 2/(pi x)) / x",
     lambda w: (Y(1, xw(w)) - 2 / mp.pi * LOG(xw(w)) * J(1, xw(w)) + 2 / (mp.pi * xw(w))) / xw(w)),
]
AUX = [
    ("P0", "P0(x)", lambda u: aux(0, xu(u))[0]),
    ("Q0", "x Q0(x)", lambda u: aux(0, xu(u))[1] * xu(u)),
    ("P1", "P1(x)", lambda u: aux(1, xu(u))[0]),
    ("Q1", "x Q1(x)", lambda u: aux(1, xu(u))[1] * xu(u)),
]

TABLES = [(name, what, f, 0, 1) for name, what, f in SMALL]
TABLES += [(name + "_MID", what + ", 8 < x <= 16", f, mp.mpf(1) / 4, 1) for name, what, f in AUX]
TABLES += [(name + "_FAR", what + ", x > 16", f, mp.mpf("1e-40"), mp.mpf(1) / 4) for name, what, f in AUX]

print("// Generated by tools/gen_bessel_coeffs.py. Do not edit by hand.")
for name, what, f, lo, hi in TABLES:
    coeffs = chebyshev(f, lo, hi)
    print()
    print(f"/// Chebyshev coefficients of {what}.")
    print(f"pub(super) const {name}: [f64; {len(coeffs)}] = [")
    for c in coeffs:
        print(f"    {repr(float(c))},")
    print("];")
