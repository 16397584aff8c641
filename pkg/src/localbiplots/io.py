"""CSV and Newick file handling plus dataset export."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bundle import dump_json
from .errors import ValidationError
from .simulate import SimulatedDataset
from .tree import PhyloTree, parse_newick, to_newick


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """Samples-by-variables matrix with column names and sample ids."""

    values: np.ndarray
    columns: list[str]
    ids: list[str]

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


def load_matrix_csv(path, id_col: str | None = None) -> DataMatrix:
    """Read a data CSV: header row of variable names, one sample per row.

    If id_col names a header column, that column supplies sample ids;
    otherwise ids are s1..sn.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if len(rows) < 2:
        raise ValidationError(f"{path}: need a header row and at least one sample row")
    header = [h.strip() for h in rows[0]]
    id_idx = None
    if id_col is not None:
        if id_col not in header:
            raise ValidationError(f"{path}: id column {id_col!r} not in header")
        id_idx = header.index(id_col)
    columns = [h for i, h in enumerate(header) if i != id_idx]
    ids = []
    values = []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValidationError(f"{path}: line {r} has {len(row)} fields, expected {len(header)}")
        if id_idx is not None:
            ids.append(row[id_idx].strip())
        try:
            values.append([float(v) for i, v in enumerate(row) if i != id_idx])
        except ValueError as exc:
            raise ValidationError(f"{path}: line {r}: {exc}") from None
    if id_idx is None:
        ids = [f"s{i + 1}" for i in range(len(values))]
    return DataMatrix(values=np.array(values, dtype=np.float64), columns=columns, ids=ids)


def load_q_csv(path) -> np.ndarray:
    """Read a square, header-free matrix CSV."""
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    try:
        mat = np.array([[float(v) for v in row] for row in rows], dtype=np.float64)
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValidationError(f"{path}: expected a square matrix, got shape {mat.shape}")
    return mat


def load_tree_file(path) -> PhyloTree:
    text = Path(path).read_text()
    return parse_newick(text)


def align_to_tree(data: DataMatrix, tree: PhyloTree) -> DataMatrix:
    """Reorder data columns to the tree's tip order; error on mismatch."""
    if set(data.columns) != set(tree.tip_order):
        missing = [t for t in tree.tip_order if t not in set(data.columns)][:5]
        extra = [c for c in data.columns if c not in set(tree.tip_order)][:5]
        raise ValidationError(
            f"data columns do not match tree tips; first mismatches: "
            f"missing from data {missing}, not in tree {extra}"
        )
    if data.columns == tree.tip_order:
        return data
    order = [data.columns.index(t) for t in tree.tip_order]
    return DataMatrix(
        values=data.values[:, order], columns=list(tree.tip_order), ids=data.ids
    )


def write_matrix_csv(path, values: np.ndarray, columns: list[str]) -> None:
    values = np.asarray(values)
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in values:
            if np.issubdtype(values.dtype, np.integer):
                writer.writerow([int(v) for v in row])
            else:
                writer.writerow([format(float(v), ".17g") for v in row])


def write_dataset(ds: SimulatedDataset, outdir) -> dict[str, Path]:
    """Write counts.csv, tree.nwk and sidecar.json; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    counts_path = outdir / "counts.csv"
    tree_path = outdir / "tree.nwk"
    sidecar_path = outdir / "sidecar.json"

    write_matrix_csv(counts_path, ds.data, ds.tree.tip_order)
    tree_path.write_text(to_newick(ds.tree) + "\n")
    sidecar = {
        "config": {
            "depth": ds.config.depth,
            "n": ds.config.n,
            "c1": ds.config.c1,
            "c2": ds.config.c2,
            "s": ds.config.s,
            "seed": ds.config.seed,
        },
        "sample_ids": ds.sample_ids,
        "columns": list(ds.tree.tip_order),
        "group": [int(v) for v in ds.group],
        "shallow": [int(v) for v in ds.shallow],
        "deep": [int(v) for v in ds.deep],
    }
    sidecar_path.write_text(dump_json(sidecar) + "\n")
    return {"counts": counts_path, "tree": tree_path, "sidecar": sidecar_path}


def read_sidecar(path) -> dict:
    import json

    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ValidationError(f"cannot read sidecar {path}: {exc}") from None
