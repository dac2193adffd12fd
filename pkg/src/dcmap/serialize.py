"""JSON / CSV document formats.

Lattice JSON:
    {"kind": "zc"|"z2"|"log", "c": number, "size": integer,
     "values": [[...], ...]}
where values[n][m] is [re, im] or the literal string "inf" for the
infinite vertex.  Floats serialize through repr, so a parse/serialize
round trip is bit exact.

Radii CSV: header "N,M,R", one row per sublattice label, the string
"inf" marking the line circle.

Angle CSV: header "n,alpha,residual"; the residual column is empty at
the two ends where the three-term recurrence has no interior stencil.
"""

from __future__ import annotations

import json
import math

from .lattice import ConformalLattice, LatticeKind
from .numerics import INFINITY, ExtendedComplex
from .painleve import PainleveSolution, dpii_residual
from .radii import RadiusField, SublatticeLabel

__all__ = [
    "lattice_to_json",
    "lattice_from_json",
    "save_lattice",
    "load_lattice",
    "radii_to_csv",
    "radii_from_csv",
    "painleve_to_csv",
]

_INF_LITERAL = "inf"


def lattice_to_json(lat: ConformalLattice, indent: int | None = None) -> str:
    values = [
        [_INF_LITERAL if not v.is_finite else [v.re, v.im] for v in row]
        for row in lat.values
    ]
    doc = {"kind": lat.kind.value, "c": lat.c, "size": lat.size, "values": values}
    return json.dumps(doc, indent=indent)


def lattice_from_json(text: str) -> ConformalLattice:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("lattice document must be a JSON object")
    try:
        kind = LatticeKind(doc["kind"])
        c = float(doc["c"])
        size = int(doc["size"])
        raw = doc["values"]
    except (KeyError, ValueError, TypeError) as exc:
        raise ValueError(f"malformed lattice document: {exc}") from exc
    if len(raw) != size + 1:
        raise ValueError(f"expected {size + 1} rows, found {len(raw)}")
    values = []
    for n, row in enumerate(raw):
        if len(row) != size + 1:
            raise ValueError(f"row {n} has {len(row)} entries, expected {size + 1}")
        out = []
        for m, entry in enumerate(row):
            if entry == _INF_LITERAL:
                out.append(INFINITY)
            else:
                try:
                    re, im = entry
                    out.append(ExtendedComplex(float(re), float(im)))
                except (TypeError, ValueError) as exc:
                    raise ValueError(
                        f"bad value at ({n}, {m}): {entry!r}") from exc
        values.append(out)
    return ConformalLattice(kind=kind, c=c, size=size, values=values)


def save_lattice(lat: ConformalLattice, path, indent: int | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(lattice_to_json(lat, indent=indent))
        fh.write("\n")


def load_lattice(path) -> ConformalLattice:
    with open(path, encoding="utf-8") as fh:
        return lattice_from_json(fh.read())


def radii_to_csv(fld: RadiusField) -> str:
    lines = ["N,M,R"]
    for (N, M) in sorted(fld.values, key=lambda z: (z[1], z[0])):
        r = fld.values[(N, M)]
        lines.append(f"{N},{M},{_INF_LITERAL if math.isinf(r) else repr(r)}")
    return "\n".join(lines) + "\n"


def radii_from_csv(text: str, c: float) -> RadiusField:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "N,M,R":
        raise ValueError("radii CSV must start with header 'N,M,R'")
    values = {}
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 3:
            raise ValueError(f"bad radii row: {ln!r}")
        N, M = int(parts[0]), int(parts[1])
        r = math.inf if parts[2].strip() == _INF_LITERAL else float(parts[2])
        values[SublatticeLabel(N, M)] = r
    return RadiusField(c=float(c), values=values)


def painleve_to_csv(sol: PainleveSolution) -> str:
    lines = ["n,alpha,residual"]
    for n, alpha in enumerate(sol.alphas):
        if 1 <= n <= sol.steps - 1:
            res = repr(dpii_residual(sol, n))
        else:
            res = ""
        lines.append(f"{n},{alpha!r},{res}")
    return "\n".join(lines) + "\n"
