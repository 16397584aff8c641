"""Command-line surface: simulate | mds | lb | check | serve.

Exit codes: 0 success, 2 validation or domain error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import biplots, mds
from .bundle import dump_json, make_bundle, validate_bundle
from .distances import GeneralizedForm, make_distance, squared_distance_matrix, tree_covariance_q
from .errors import NumericError, ValidationError
from .io import (
    DataMatrix,
    align_to_tree,
    load_matrix_csv,
    load_q_csv,
    load_tree_file,
    read_sidecar,
    write_dataset,
)
from .simulate import SimulationConfig, simulate

DISTANCE_NAMES = {
    "euclidean": "euclidean",
    "geuclidean": "generalized_euclidean",
    "manhattan": "manhattan",
    "wunifrac": "weighted_unifrac",
    "uunifrac": "unweighted_unifrac",
}
TREE_REQUIRED = {"wunifrac", "uunifrac"}
MODE_NAMES = {
    "analytic": biplots.ANALYTIC,
    "positive": biplots.POSITIVE,
    "negative": biplots.NEGATIVE,
    "eps-positive": biplots.EPS_POSITIVE,
    "eps-negative": biplots.EPS_NEGATIVE,
}


def _add_analysis_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--data", required=True, help="data CSV (header row of variable names)")
    sub.add_argument("--id-col", default=None, help="header name of an id column, if any")
    sub.add_argument("--distance", required=True, choices=sorted(DISTANCE_NAMES))
    sub.add_argument("--tree", default=None, help="Newick file (required for UniFrac kinds)")
    sub.add_argument("--q", default=None, help="CSV with a square SPD form matrix")
    sub.add_argument(
        "--q-blend",
        type=float,
        default=None,
        help="build the form matrix from the tree at this identity-to-tree blend",
    )
    sub.add_argument("--k", type=int, default=2, help="embedding dimension (default 2)")
    sub.add_argument("--center", choices=["on", "off"], default="off",
                     help="mean-center data columns first (default off)")
    sub.add_argument("--correlation", action="store_true",
                     help="include the correlation biplot in the bundle")
    sub.add_argument("--out", default=".", help="output directory (default .)")


def _build_distance(args, data: DataMatrix):
    """Resolve flags into (distance, aligned data, tree, config echo extras)."""
    kind = DISTANCE_NAMES[args.distance]
    tree = None
    if args.tree is not None:
        tree = load_tree_file(args.tree)

    if args.distance in TREE_REQUIRED and tree is None:
        raise ValidationError(f"--distance {args.distance} requires --tree")
    if args.distance == "geuclidean" and args.q is None and args.q_blend is None:
        raise ValidationError("--distance geuclidean requires --q or --q-blend with --tree")
    if tree is not None and args.distance not in TREE_REQUIRED and args.q_blend is None:
        raise ValidationError(f"--tree is not used by --distance {args.distance}")
    if args.q_blend is not None and tree is None:
        raise ValidationError("--q-blend requires --tree")

    if tree is not None:
        data = align_to_tree(data, tree)

    q = None
    if args.distance == "geuclidean":
        if args.q is not None:
            q = GeneralizedForm(load_q_csv(args.q))
            if q.p != data.p:
                raise ValidationError(f"form matrix is {q.p}x{q.p} but data has {data.p} columns")
        else:
            q = tree_covariance_q(tree, args.q_blend)

    dist = make_distance(kind, q=q, tree=tree if args.distance in TREE_REQUIRED else None)

    values = data.values
    if args.center == "on":
        if args.distance in TREE_REQUIRED:
            raise ValidationError("--center on would create negative UniFrac inputs")
        values = values - values.mean(axis=0)
        data = DataMatrix(values=values, columns=data.columns, ids=data.ids)
    return dist, data, tree


def _solve(args, data: DataMatrix, dist):
    delta = squared_distance_matrix(dist, data.values)
    return mds.classical_mds(delta, args.k)


def _config_echo(args, command: str) -> dict:
    echo = {
        "command": command,
        "data": args.data,
        "id_col": args.id_col,
        "distance": args.distance,
        "tree": args.tree,
        "q": args.q,
        "q_blend": args.q_blend,
        "k": args.k,
        "center": args.center,
    }
    if command == "lb":
        echo.update({"mode": args.mode, "epsilon": args.epsilon, "points": args.points})
    return echo


def _write_bundle(args, bundle: dict) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "bundle.json"
    path.write_text(dump_json(bundle) + "\n")
    print(path)
    return 0


def cmd_simulate(args) -> int:
    config = SimulationConfig(
        depth=args.depth, n=args.n, c1=args.c1, c2=args.c2, s=args.s, seed=args.seed
    )
    paths = write_dataset(simulate(config), args.out)
    for p in paths.values():
        print(p)
    return 0


def cmd_mds(args) -> int:
    data = load_matrix_csv(args.data, args.id_col)
    dist, data, tree = _build_distance(args, data)
    sol = _solve(args, data, dist)
    corr = biplots.correlation_biplot(data.values, sol).matrix if args.correlation else None
    bundle = make_bundle(
        config=_config_echo(args, "mds"),
        ids=data.ids,
        sol=sol,
        distance_kind=dist.kind,
        distance_params=dist.params(),
        correlation=corr,
        tree=tree,
    )
    return _write_bundle(args, bundle)


def cmd_lb(args) -> int:
    data = load_matrix_csv(args.data, args.id_col)
    dist, data, tree = _build_distance(args, data)
    sol = _solve(args, data, dist)

    mode = biplots.LbMode(MODE_NAMES[args.mode], epsilon=args.epsilon)
    if args.points == "samples":
        points = [data.values[i] for i in range(data.n)]
    else:
        pts = load_matrix_csv(args.points)
        if pts.columns != data.columns:
            raise ValidationError("points CSV header must match the data header")
        points = [pts.values[i] for i in range(pts.n)]

    field = biplots.lb_field(sol, data.values, dist, points, mode)
    if field.errors:
        idx, exc = field.errors[0]
        raise ValidationError(f"point {idx}: {exc}")
    constancy = biplots.lb_constancy(field)
    corr = biplots.correlation_biplot(data.values, sol).matrix if args.correlation else None
    bundle = make_bundle(
        config=_config_echo(args, "lb"),
        ids=data.ids,
        sol=sol,
        distance_kind=dist.kind,
        distance_params=dist.params(),
        lb_field=field,
        lb_mode=args.mode,
        lb_epsilon=args.epsilon,
        lb_constancy=constancy,
        correlation=corr,
        tree=tree,
    )
    return _write_bundle(args, bundle)


def cmd_check(args) -> int:
    import json

    try:
        bundle = json.loads(Path(args.bundle).read_text())
    except (OSError, ValueError) as exc:
        raise ValidationError(f"cannot read bundle: {exc}") from None
    problems = validate_bundle(bundle)
    if problems:
        for problem in problems:
            print(f"problem: {problem}", file=sys.stderr)
        return 2
    n = len(bundle["embedding"]["ids"])
    k = len(bundle["embedding"]["coords"][0]) if bundle["embedding"]["coords"] else 0
    print(f"bundle ok: n={n}, k={k}, distance={bundle['distance']['kind']}")
    return 0


def cmd_serve(args) -> int:
    from .server import ServedAnalysis, make_server

    data = load_matrix_csv(args.data, args.id_col)
    dist, data, tree = _build_distance(args, data)
    sol = _solve(args, data, dist)
    sidecar = read_sidecar(args.sidecar) if args.sidecar else None
    analysis = ServedAnalysis(sol=sol, data=data, dist=dist, tree=tree, sidecar=sidecar)
    server = make_server(analysis, host=args.host, port=args.port, ui_dir=args.ui_dir)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}/ (Ctrl-C to stop)", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localbiplots",
        description="Classical MDS embeddings, supplemental points and local biplot axes",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="generate the synthetic two-group count dataset")
    sim.add_argument("--depth", type=int, default=5, help="tree depth; p = 2^depth tips")
    sim.add_argument("--n", type=int, default=20, help="number of samples (even)")
    sim.add_argument("--c1", type=float, default=10.0)
    sim.add_argument("--c2", type=float, default=1.0)
    sim.add_argument("--s", type=float, default=2.0, help="double-Poisson dispersion")
    sim.add_argument("--seed", type=int, default=7)
    sim.add_argument("--out", default=".", help="output directory")
    sim.set_defaults(func=cmd_simulate)

    m = subs.add_parser("mds", help="classical scaling of a data CSV under a distance")
    _add_analysis_flags(m)
    m.set_defaults(func=cmd_mds)

    lb = subs.add_parser("lb", help="local biplot axes on top of an MDS solution")
    _add_analysis_flags(lb)
    lb.add_argument("--mode", required=True, choices=sorted(MODE_NAMES))
    lb.add_argument("--epsilon", type=float, default=None)
    lb.add_argument("--points", default="samples",
                    help="'samples' or a CSV of query points (default samples)")
    lb.set_defaults(func=cmd_lb)

    chk = subs.add_parser("check", help="validate the self-consistency of a bundle")
    chk.add_argument("--bundle", required=True)
    chk.set_defaults(func=cmd_check)

    srv = subs.add_parser("serve", help="serve the interactive explorer and JSON API")
    _add_analysis_flags(srv)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8642)
    srv.add_argument("--sidecar", default=None, help="sidecar JSON with group/shallow/deep")
    srv.add_argument("--ui-dir", default=None, help="directory of built UI assets")
    srv.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
