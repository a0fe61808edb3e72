"""Sweep the power-gain-region boundary and show the receiver trade-off.

Every boundary beamformer trades interference at the primary receiver
against interference at the eavesdropper and signal at the secondary
receiver.  The corners of the weight simplex are pure strategies: null the
primary, blast the eavesdropper, or serve the secondary.
Run: python demos/boundary_tradeoff.py [out.csv]
"""

import sys

import numpy as np

from leasesec import SystemParams, TrialSeed, sample_channels
from leasesec.pgr import (
    DIRECTION_SUPPRESS_PRIMARY,
    boundary_beamformer,
    export_boundary,
    sample_simplex,
)

p = SystemParams.from_snr_db(10.0, alpha=0.0, n_t=2)
ch = sample_channels(p, TrialSeed(4, 0))

points = [
    boundary_beamformer(mu, DIRECTION_SUPPRESS_PRIMARY, ch, p.p_s_max)
    for mu in sample_simplex(3, 60)
]

print(f"{len(points)} boundary points (two antennas, full power)\n")
corners = {
    "null the primary receiver  (1,0,0)": (1.0, 0.0, 0.0),
    "cover the eavesdropper     (0,1,0)": (0.0, 1.0, 0.0),
    "serve the secondary (MRT)  (0,0,1)": (0.0, 0.0, 1.0),
}
print(f"{'strategy':<36} {'gain@primary':>12} {'gain@eave':>10} {'gain@own':>9}")
for label, mu in corners.items():
    pt = boundary_beamformer(mu, DIRECTION_SUPPRESS_PRIMARY, ch, p.p_s_max)
    print(f"{label:<36} {pt.gains[0]:>12.4f} {pt.gains[1]:>10.4f} "
          f"{pt.gains[2]:>9.4f}")

gains = np.array([pt.gains for pt in points])
print("\nRanges along the boundary:")
for k, name in enumerate(("primary receiver", "eavesdropper", "secondary rx")):
    print(f"  gain at {name:<17}: {gains[:, k].min():8.4f} .. "
          f"{gains[:, k].max():8.4f}")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w", encoding="utf-8", newline="\n") as fh:
        export_boundary(points, fh)
    print(f"\nwrote {len(points)} rows to {sys.argv[1]}")
else:
    print("\npass a filename to export the full boundary as CSV")
