#!/usr/bin/env python3
"""Regenerates include/gpseq/smoothness_constants.hpp.

C1(d): |d! p|'_N <= C1(d) |p|_N   (binomial -> monomial)
C2(d): |d! p|_N  <= C2(d) |p|'_N  (monomial -> binomial)
CAP(d): |a^d p|'_N <= CAP(d) mu^-d |p o l|'_M  for l(n) = a n + b,
        P = a[M] + b inside [N], M >= 2, mu = M/N.

Each constant is the worst row sum of the absolute transition coefficients
weighted by the scale factors that survive after bounding N^(j-i) <= 1,
b <= N and a <= 2/mu.
"""
import math
import pathlib
import sys

MAX_D = 8


def stirling_first(n):
    s = [[0] * (n + 1) for _ in range(n + 1)]
    s[0][0] = 1
    for i in range(1, n + 1):
        for k in range(1, i + 1):
            s[i][k] = s[i - 1][k - 1] - (i - 1) * s[i - 1][k]
    return s


def stirling_second(n):
    S = [[0] * (n + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for i in range(1, n + 1):
        for k in range(1, i + 1):
            S[i][k] = S[i - 1][k - 1] + k * S[i - 1][k]
    return S


def c1(d, s):
    f = math.factorial
    return max([sum(abs(s[i][j]) * f(d) // f(i) for i in range(j, d + 1)) for j in range(1, d + 1)], default=0)


def c2(d, S):
    f = math.factorial
    return max([sum(f(d) * S[j][i] * f(i) for j in range(i, d + 1)) for i in range(1, d + 1)], default=0)


def cap(d):
    return max([sum(math.comb(i, j) * 2 ** (d - i) for i in range(j, d + 1)) for j in range(1, d + 1)], default=0)


def main():
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else \
        pathlib.Path(__file__).resolve().parent.parent / "include" / "gpseq" / "smoothness_constants.hpp"
    s = stirling_first(MAX_D)
    S = stirling_second(MAX_D)
    rows = lambda fn: ", ".join(str(fn(d)) for d in range(MAX_D + 1))
    text = f"""#pragma once
// Generated by tools/gen_smoothness_constants.py; do not edit.

#include <array>
#include <cstdint>

namespace gpseq::smoothness {{

inline constexpr unsigned kMaxDegree = {MAX_D};

inline constexpr std::array<std::uint64_t, {MAX_D + 1}> kC1 = {{{rows(lambda d: c1(d, s))}}};
inline constexpr std::array<std::uint64_t, {MAX_D + 1}> kC2 = {{{rows(lambda d: c2(d, S))}}};
inline constexpr std::array<std::uint64_t, {MAX_D + 1}> kCAP = {{{rows(cap)}}};

}} // namespace gpseq::smoothness
"""
    out.write_text(text)


if __name__ == "__main__":
    main()
