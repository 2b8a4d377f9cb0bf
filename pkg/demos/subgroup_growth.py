"""
Counting subgroups of free groups
=================================

Hall's recursion against brute-force enumeration of transitive actions, the
factorial lower bound behind the growth estimates, and how slowly the normalised
exponent approaches its limit.
"""
from __future__ import annotations

import math

import numpy as np

from geobound.growth import SURFACE, growth_report, hall_count, log_ratio, oracle_count

for r in (2, 3):
    print(f"rank {r}:", [hall_count(r, n) for n in range(1, 6)], "enumerated:", [oracle_count(r, n) for n in range(1, 6)])

# index-n subgroups of F_3 give index-8n subgroups of the octagon group
print(growth_report(SURFACE, 8).text())

ns = np.arange(10, 201, 10)
ratios = np.array([log_ratio(3, int(n)) for n in ns])
for n, v in zip(ns, ratios):
    bar = "#" * int(40 * (v - 1))
    print(f"n = {n:3d}  log2 N_3(n) / (n log2 n) = {v:.3f}  {bar}")

# the ratio behaves like 2 - 2 log2(e) / log2(n): below 1.5 until n is about 30
first = next(int(n) for n in range(2, 500) if log_ratio(3, n) >= 1.5)
print("first n with ratio >= 1.5:", first, "| 2 - 2/ln(n) at that n:", round(2 - 2 / math.log(first), 3))
