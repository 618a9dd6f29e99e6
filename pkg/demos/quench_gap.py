"""Gap of a spatial quench versus the branching strength of segment 2.

With the even excitation parity the gap is the sum of the two largest
one-particle energies.  Sweeping delta2 crosses the two boundary
energies -|p1-q1|*delta1/2 and -|p2-q2|*delta2/2: the dominant pair
switches and the gap curve kinks exactly at delta2/delta1 = 5.4/5.8.
"""

import numpy as np

from coagchain import quench_gap_sweep

P1, Q1, P2, Q2 = 0.6, 6.0, 6.0, 0.2
L = 30  # sites per segment; raise to 60 for production curves

for delta1 in (0.5, 1.0, 2.0):
    crossing = delta1 * abs(P1 - Q1) / abs(P2 - Q2)
    print(f"delta1 = {delta1}: boundary energies cross at "
          f"delta2 = {crossing:.4f}")
    grid = np.linspace(0.2 * delta1, 2.0 * delta1, 25)
    points = quench_gap_sweep(P1, Q1, P2, Q2, delta1, L, grid)
    print("  delta2     gap        dominant pair")
    last_pair = None
    for pt in points:
        marker = ""
        if last_pair is not None and set(pt.labels) != last_pair:
            marker = "   <- regime change"
        last_pair = set(pt.labels)
        print(f"  {pt.x:6.3f}  {pt.gap:+.6f}   {'+'.join(pt.labels)}{marker}")
    print()
