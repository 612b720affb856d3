"""Plain-dict report builders shared by the CLI's JSON and text output."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from importlib import resources

from . import __version__
from .oracle import WedderburnReport
from .quasigroup import LatinSquare
from .subconstituent import (
    Certificate,
    FixedPointProfile,
    ModuleTable,
    SubPermutation,
    cycle_structure,
    module_table,
    pi_via_division,
    properties,
    wedderburn_signature,
)

SCHEMA_VERSION = "1.0"


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())


def envelope(command: str, L: LatinSquare | None = None, seed: int | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "command": command}
    if seed is not None:
        doc["seed"] = seed
    if L is not None:
        doc["input"] = digest(L)
    return doc


def digest(L: LatinSquare) -> dict:
    return {
        "order": L.order,
        "sha256": hashlib.sha256(L.to_text().encode()).hexdigest(),
        "properties": properties(L).as_dict(),
    }


def label_json(label) -> str:
    if isinstance(label, Fraction):
        return f"{label.numerator}/{label.denominator}"
    return label


def table_json(table: ModuleTable) -> list[dict]:
    return [
        {"dimension": e.dimension, "multiplicity": e.multiplicity, "label": label_json(e.label)}
        for e in table.entries
    ]


def perm_json(perm: SubPermutation) -> dict:
    return {
        "cycles": str(perm),
        "map": {str(c): d for c, d in perm.mapping.items()},
        "cycle_structure": str(cycle_structure(perm)),
        "fixed": perm.fixed_points,
    }


def base_record(L: LatinSquare, p) -> dict:
    perm = pi_via_division(L, p)
    cs = cycle_structure(perm)
    rec = {
        "base": list(p),
        "pi": str(perm),
        "cycle_structure": str(cs),
        "fixed_count": cs.fixed,
        "k": cs.k,
        "module_table": None,
        "signature": None,
        "predicted_dim": None,
    }
    if L.order >= 5:
        table = module_table(L.order, cs)
        sig = wedderburn_signature(table)
        rec["module_table"] = table_json(table)
        rec["roots"] = [label_json(r) for r in sorted(table.roots)]
        rec["balance"] = table.balance
        rec["signature"] = {"N": sig.N, "summands": list(sig.summands), "text": str(sig)}
        rec["predicted_dim"] = sig.dimension
    return rec


def profile_json(profile: FixedPointProfile) -> dict:
    return {
        "fixed_counts": profile.fixed_counts,
        "column_structures": [None if cs is None else str(cs) for cs in profile.column_structures()],
        "structures": [[str(cs) for cs in row] for row in profile.structures],
        "row_constant": profile.row_constant,
    }


def certificate_json(cert: Certificate) -> dict:
    return {"verdict": str(cert), "certified": cert.certified, "reason": cert.reason, "detail": cert.detail}


def oracle_json(rep: WedderburnReport) -> dict:
    return {
        "base": list(rep.base),
        "oracle_dim": rep.oracle_dim,
        "predicted_dim": rep.predicted_dim,
        "predicted_summands": None if rep.predicted_summands is None else list(rep.predicted_summands),
        "center_dim": rep.center_dim,
        "dim_match": rep.dim_match,
        "center_match": rep.center_match,
        "match": rep.match,
    }
