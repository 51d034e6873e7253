"""Map a coupling-space slice through the two-qubit phase diagram.

Fixes J3 = 0.43 and sweeps J1, J2 over a 61 x 61 grid. Along J1 = J2
with |J1| < J3 the two lowest final energies coincide, the gap closes
exactly at s = 1, and the success probability collapses toward the
degenerate-subspace value. Four heatmaps show the minimum gap, its
position, the success probability, and the residual energy.
"""

import os

import numpy as np

from aqcsim import PlotSpec, emit_plot, final_energies, slice_sweep, write_records

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
DEG_TOL = 1e-9


def main():
    os.makedirs(OUT, exist_ok=True)
    records = slice_sweep(0.43, 61, 3.0, 5.0)
    csv = os.path.join(OUT, "slice.csv")
    write_records(records, csv)

    closed = [r for r in records if r.min_gap < DEG_TOL]
    print(f"{len(records)} grid points, {len(closed)} with a closed gap:")
    for r in closed:
        f = np.sort(final_energies(r.couplings))
        print(
            f"  J = ({r.couplings.J[1]:+.2f}, {r.couplings.J[2]:+.2f}, 0.43)"
            f"  lowest final energies {f[0]:+.4f}, {f[1]:+.4f}  P = {r.success_prob:.4f}"
        )

    panels = {
        "slice_min_gap.svg": PlotSpec(x="J1", y="J2", color="min_gap", kind="heatmap", cmin=0.0),
        "slice_s_star.svg": PlotSpec(x="J1", y="J2", color="s_star", kind="heatmap", cmin=0.0, cmax=1.0),
        "slice_p.svg": PlotSpec(x="J1", y="J2", color="P", kind="heatmap", cmin=0.0, cmax=1.0),
        "slice_delta_e.svg": PlotSpec(x="J1", y="J2", color="delta_E", kind="heatmap", cmin=0.0),
    }
    for name, spec in panels.items():
        emit_plot(records, spec, os.path.join(OUT, name))
    print(f"wrote {csv} and {len(panels)} heatmaps to {OUT}")


if __name__ == "__main__":
    main()
