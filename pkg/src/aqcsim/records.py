"""CSV serialization of instance records.

The main table is rectangular with a fixed header; coupling vectors vary
in length with n, so they go to a sidecar file next to the main one,
keyed by record index. All reals use 17 significant digits, which
round-trips binary64 exactly.
"""

from __future__ import annotations

import os

from .hamiltonian import CouplingVector
from .metrics import InstanceRecord

HEADER = "index,n,T,min_gap,s_star,P,delta_E,delta,abs_J_top,ground_dim,norm_drift,M,criterion_bound,flags"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def sidecar_path(path: str) -> str:
    root, ext = os.path.splitext(path)
    return f"{root}.couplings{ext or '.csv'}"


def format_record(rec: InstanceRecord) -> str:
    return ",".join(
        (
            str(rec.index),
            str(rec.n),
            _fmt(rec.T),
            _fmt(rec.min_gap),
            _fmt(rec.s_star),
            _fmt(rec.success_prob),
            _fmt(rec.energy_error),
            _fmt(rec.avg_overlap),
            _fmt(rec.abs_J_top),
            str(rec.ground_subspace_dim),
            _fmt(rec.max_norm_drift),
            _fmt(rec.matrix_element_max),
            _fmt(rec.criterion_bound),
            ";".join(rec.flags),
        )
    )


def write_records(records, path: str) -> int:
    """Write the main table and the couplings sidecar; returns the row count."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as main, open(
        sidecar_path(path), "w", encoding="utf-8", newline="\n"
    ) as side:
        main.write(HEADER + "\n")
        side.write("index,n,J\n")
        for rec in records:
            main.write(format_record(rec) + "\n")
            joined = ";".join(_fmt(j) for j in rec.couplings.J)
            side.write(f"{rec.index},{rec.n},{joined}\n")
            count += 1
    return count


def read_records(path: str):
    """Parse a record table back; couplings reattach from the sidecar if present."""
    couplings = {}
    side = sidecar_path(path)
    if os.path.exists(side):
        with open(side, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
            if header != "index,n,J":
                raise ValueError(f"unexpected sidecar header: {header!r}")
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                idx, n, joined = line.split(",")
                vals = [float(v) for v in joined.split(";")]
                couplings[int(idx)] = CouplingVector(int(n), vals)

    records = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != HEADER:
            raise ValueError(f"unexpected header: {header!r}")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 14:
                raise ValueError(f"expected 14 columns, got {len(parts)}: {line!r}")
            index = int(parts[0])
            n = int(parts[1])
            cv = couplings.get(index)
            if cv is None:
                # sidecar missing: keep the row usable for plotting
                cv = CouplingVector(n, [0.0] * 2**n)
            records.append(
                InstanceRecord(
                    n=n,
                    couplings=cv,
                    T=float(parts[2]),
                    min_gap=float(parts[3]),
                    s_star=float(parts[4]),
                    success_prob=float(parts[5]),
                    energy_error=float(parts[6]),
                    avg_overlap=float(parts[7]),
                    abs_J_top=float(parts[8]),
                    ground_subspace_dim=int(parts[9]),
                    max_norm_drift=float(parts[10]),
                    matrix_element_max=float(parts[11]),
                    criterion_bound=float(parts[12]),
                    flags=tuple(parts[13].split(";")) if parts[13] else (),
                    index=index,
                )
            )
    return records
