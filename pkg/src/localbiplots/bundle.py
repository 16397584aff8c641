"""Analysis bundles: one JSON document carrying an embedding and its
companions, rendered deterministically (floats at 17 significant digits) so
identical runs are byte-identical.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .biplots import LbField
from .errors import ValidationError
from .mds import MdsSolution
from .tree import PhyloTree, to_newick


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValidationError("bundles cannot contain NaN or infinite values")
    return format(x, ".17g")


def _encode(obj, out: list) -> None:
    import json as _json

    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(_json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(float(obj)))
    elif isinstance(obj, np.ndarray):
        _encode(obj.tolist(), out)
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key, value in obj.items():
            if not isinstance(key, str):
                raise ValidationError(f"bundle keys must be strings, got {type(key)}")
            if not first:
                out.append(",")
            out.append(_json.dumps(key))
            out.append(":")
            _encode(value, out)
            first = False
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(",")
            _encode(value, out)
        out.append("]")
    else:
        raise ValidationError(f"cannot serialise {type(obj)} into a bundle")


def dump_json(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 sig digits."""
    out: list = []
    _encode(obj, out)
    return "".join(out)


def tree_digest(tree: PhyloTree) -> str:
    """sha256 of the canonical Newick serialisation."""
    return "sha256:" + hashlib.sha256(to_newick(tree).encode()).hexdigest()


def make_bundle(
    config: dict,
    ids: list[str],
    sol: MdsSolution,
    distance_kind: str,
    distance_params: dict,
    lb_field: LbField | None = None,
    lb_mode: str | None = None,
    lb_epsilon: float | None = None,
    lb_constancy: float | None = None,
    correlation: np.ndarray | None = None,
    tree: PhyloTree | None = None,
) -> dict:
    lb_section = None
    if lb_field is not None:
        lb_section = [
            {
                "point": m.query_point.tolist(),
                "mode": lb_mode,
                "epsilon": lb_epsilon,
                "axes": m.axes.tolist(),
            }
            for m in lb_field.successful()
        ]
    return {
        "config": config,
        "embedding": {"ids": list(ids), "coords": sol.m_embed.tolist()},
        "eigenvalues": sol.lam.tolist(),
        "inertia": {
            "positive": sol.inertia.positive,
            "negative": sol.inertia.negative,
            "discarded": sol.inertia.discarded,
        },
        "lb": lb_section,
        "lb_constancy": lb_constancy,
        "correlation": None if correlation is None else np.asarray(correlation).tolist(),
        "distance": {"kind": distance_kind, "params": distance_params},
        "tree_digest": None if tree is None else tree_digest(tree),
    }


def validate_bundle(bundle: dict) -> list[str]:
    """Check the mutual consistency of every matrix dimension in a bundle.

    Returns a list of problems; empty means the bundle is consistent.
    """
    problems: list[str] = []
    required = {"config", "embedding", "eigenvalues", "inertia", "lb", "correlation", "distance", "tree_digest"}
    missing = required - set(bundle)
    if missing:
        problems.append(f"missing keys: {sorted(missing)}")
        return problems

    emb = bundle["embedding"]
    if not isinstance(emb, dict) or "ids" not in emb or "coords" not in emb:
        problems.append("embedding must hold ids and coords")
        return problems
    ids = emb["ids"]
    coords = emb["coords"]
    n = len(ids)
    if len(coords) != n:
        problems.append(f"{len(coords)} coordinate rows but {n} ids")
    widths = {len(row) for row in coords}
    if len(widths) > 1:
        problems.append(f"ragged embedding rows: widths {sorted(widths)}")
        return problems
    k = widths.pop() if widths else 0

    eig = bundle["eigenvalues"]
    if len(eig) < k:
        problems.append(f"{len(eig)} eigenvalues but embedding is {k}-dimensional")
    if any(eig[i] < eig[i + 1] for i in range(len(eig) - 1)):
        problems.append("eigenvalues are not non-increasing")

    inertia = bundle["inertia"]
    for key in ("positive", "negative", "discarded"):
        if key not in inertia:
            problems.append(f"inertia missing {key}")

    p = None
    if bundle["lb"] is not None:
        for idx, entry in enumerate(bundle["lb"]):
            this_p = len(entry.get("point", []))
            axes = entry.get("axes", [])
            if p is None:
                p = this_p
            if this_p != p:
                problems.append(f"lb[{idx}] point length {this_p} != {p}")
            if len(axes) != p:
                problems.append(f"lb[{idx}] has {len(axes)} axis rows, expected {p}")
            if any(len(row) != k for row in axes):
                problems.append(f"lb[{idx}] axis rows are not {k}-dimensional")

    if bundle["correlation"] is not None:
        corr = bundle["correlation"]
        if p is not None and len(corr) != p:
            problems.append(f"correlation has {len(corr)} rows, expected {p}")
        if any(len(row) != k for row in corr):
            problems.append(f"correlation rows are not {k}-dimensional")

    if not isinstance(bundle["distance"], dict) or "kind" not in bundle["distance"]:
        problems.append("distance section must carry a kind")
    return problems
