"""The intricacy ceiling at fixed entropy, for finite N and in the limit.

For each coefficient family the maximal normalized intricacy at normalized
entropy x has a simple closed form in the limit of many coordinates:
x(1-x) for the neural complexity, min(x, 1-x) for the uniform intricacy,
and min(x, 1-x, p, 1-p) for the symmetric p-intricacy.  The finite-size
ceiling converges to it no slower than 1/(2 sqrt N).
"""
import math

import numpy as np

from intricacy import coefficient_table, ic_limit, ic_n, parse_family

FAMILIES = ("est", "uniform", "p-sym:0.3")

print("limiting ceilings on a coarse grid of x:")
xs = np.linspace(0, 1, 11)
header = "x".rjust(6) + "".join(f"{f:>12}" for f in FAMILIES)
print(header)
for x in xs:
    row = f"{x:6.1f}"
    for fam in FAMILIES:
        row += f"{ic_limit(float(x), parse_family(fam)):12.4f}"
    print(row)

print()
print("worst-case gap between the size-N ceiling and its limit,")
print("next to the guaranteed rate 1/(2 sqrt N):")
grid = np.linspace(0, 1, 401)
print("     N" + "".join(f"{f:>12}" for f in FAMILIES) + "       bound")
for N in (1, 2, 4, 8, 16, 32, 64):
    row = f"{N:6d}"
    for fam in FAMILIES:
        measure = parse_family(fam)
        table = coefficient_table(measure, N)
        gap = max(abs(ic_n(float(x), table) - ic_limit(float(x), measure))
                  for x in grid)
        row += f"{gap:12.5f}"
    print(row + f"{0.5 / math.sqrt(N):12.5f}")
print()
print("the uniform family saturates the bound at N=1 (gap 1/2 at x=1/2)")
