"""Read-only JSON API and static UI host for one analysis.

The solution is computed once and never mutated; every request handler only
reads it (lb_axes and embed_supplemental are pure), so the threading server
needs no locks.  Endpoints:

    GET  /api/embedding    sample ids and k-dimensional coordinates
    GET  /api/meta         dimensions, distance, allowed modes, sidecar groups
    GET  /api/correlation  correlation-biplot matrix
    POST /api/lb           {point|sample, mode, epsilon} -> axes + f(z)

plus static files (the explorer) under /.
"""

from __future__ import annotations

import errno
import json
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import numpy as np

from . import biplots
from .bundle import dump_json, tree_digest
from .distances import CONTINUOUS_NONSMOOTH, DIFFERENTIABLE, Distance
from .errors import LocalBiplotsError, ValidationError
from .io import DataMatrix
from .mds import MdsSolution, embed_supplemental
from .tree import PhyloTree

CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".svg": "image/svg+xml",
    ".json": "application/json",
}

FALLBACK_PAGE = """<!doctype html>
<html><head><title>localbiplots API</title></head>
<body><h1>localbiplots API</h1>
<p>No UI assets found. The JSON API is live:</p>
<ul>
<li><a href="/api/embedding">/api/embedding</a></li>
<li><a href="/api/meta">/api/meta</a></li>
<li><a href="/api/correlation">/api/correlation</a></li>
<li>POST /api/lb with {"point": [...] | "sample": id, "mode": "...", "epsilon": ...}</li>
</ul></body></html>
"""


def allowed_modes(dist: Distance) -> list[str]:
    if dist.smoothness == DIFFERENTIABLE:
        return ["analytic", "positive", "negative", "eps-positive", "eps-negative"]
    if dist.smoothness == CONTINUOUS_NONSMOOTH:
        return ["positive", "negative", "eps-positive", "eps-negative"]
    return ["eps-positive", "eps-negative"]


@dataclass(frozen=True, eq=False)
class ServedAnalysis:
    """Everything a request needs, immutable after construction."""

    sol: MdsSolution
    data: DataMatrix
    dist: Distance
    tree: PhyloTree | None = None
    sidecar: dict | None = None

    def embedding_payload(self) -> dict:
        return {"ids": self.data.ids, "coords": self.sol.m_embed.tolist()}

    def meta_payload(self) -> dict:
        groups = {}
        sample_group = None
        if self.sidecar:
            for key in ("shallow", "deep"):
                if key in self.sidecar:
                    groups[key] = self.sidecar[key]
            sample_group = self.sidecar.get("group")
        return {
            "n": self.data.n,
            "p": self.data.p,
            "k": self.sol.k,
            "columns": self.data.columns,
            "ids": self.data.ids,
            "distance": {"kind": self.dist.kind, "params": self.dist.params()},
            "eigenvalues": self.sol.lam.tolist(),
            "inertia": {
                "positive": self.sol.inertia.positive,
                "negative": self.sol.inertia.negative,
                "discarded": self.sol.inertia.discarded,
            },
            "modes": allowed_modes(self.dist),
            "variable_groups": groups,
            "sample_group": sample_group,
            "tree_digest": None if self.tree is None else tree_digest(self.tree),
        }

    def correlation_payload(self) -> dict:
        result = biplots.correlation_biplot(self.data.values, self.sol)
        return {"matrix": result.matrix.tolist(), "constant_columns": result.constant_columns}

    def lb_payload(self, request: dict) -> dict:
        if not isinstance(request, dict):
            raise ValidationError("request body must be a JSON object")
        if "sample" in request and request.get("sample") is not None:
            sample = str(request["sample"])
            if sample not in self.data.ids:
                raise ValidationError(f"unknown sample id {sample!r}")
            z = self.data.values[self.data.ids.index(sample)]
        elif "point" in request and request.get("point") is not None:
            point = request["point"]
            if not isinstance(point, list) or len(point) != self.data.p:
                raise ValidationError(f"point must be a list of length {self.data.p}")
            try:
                z = np.array([float(v) for v in point])
            except (TypeError, ValueError):
                raise ValidationError("point entries must be numbers") from None
        else:
            raise ValidationError("request must carry 'point' or 'sample'")

        mode_name = request.get("mode", "analytic")
        lookup = {
            "analytic": biplots.ANALYTIC,
            "positive": biplots.POSITIVE,
            "negative": biplots.NEGATIVE,
            "eps-positive": biplots.EPS_POSITIVE,
            "eps-negative": biplots.EPS_NEGATIVE,
        }
        if mode_name not in lookup:
            raise ValidationError(f"unknown mode {mode_name!r}")
        epsilon = request.get("epsilon")
        if epsilon is not None:
            epsilon = float(epsilon)
        mode = biplots.LbMode(lookup[mode_name], epsilon=epsilon)
        result = biplots.lb_axes(self.sol, self.data.values, self.dist, z, mode)
        f_z = embed_supplemental(self.sol, self.data.values, self.dist, z)
        return {
            "point": z.tolist(),
            "mode": mode_name,
            "epsilon": epsilon,
            "axes": result.axes.tolist(),
            "f": f_z.tolist(),
        }


def _default_ui_dir() -> Path | None:
    packaged = Path(__file__).parent / "static"
    if (packaged / "index.html").exists():
        return packaged
    return None


def make_server(
    analysis: ServedAnalysis,
    host: str = "127.0.0.1",
    port: int = 8642,
    ui_dir=None,
) -> ThreadingHTTPServer:
    ui_path = Path(ui_dir) if ui_dir else _default_ui_dir()

    class Handler(BaseHTTPRequestHandler):
        # Quiet by default; tests and the CLI don't want per-request noise.
        def log_message(self, fmt, *args):
            pass

        def _send(self, code: int, body: bytes, content_type: str) -> None:
            self.send_response(code)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _send_json(self, code: int, payload) -> None:
            self._send(code, (dump_json(payload) + "\n").encode(), "application/json")

        def _static(self, path: str) -> None:
            if ui_path is None:
                if path in ("/", "/index.html"):
                    self._send(200, FALLBACK_PAGE.encode(), CONTENT_TYPES[".html"])
                else:
                    self._send_json(404, {"error": f"no such path {path}"})
                return
            rel = "index.html" if path == "/" else path.lstrip("/")
            target = (ui_path / rel).resolve()
            if not str(target).startswith(str(ui_path.resolve())) or not target.is_file():
                self._send_json(404, {"error": f"no such path {path}"})
                return
            ctype = CONTENT_TYPES.get(target.suffix, "application/octet-stream")
            self._send(200, target.read_bytes(), ctype)

        def do_GET(self):
            try:
                if self.path == "/api/embedding":
                    self._send_json(200, analysis.embedding_payload())
                elif self.path == "/api/meta":
                    self._send_json(200, analysis.meta_payload())
                elif self.path == "/api/correlation":
                    self._send_json(200, analysis.correlation_payload())
                elif self.path.startswith("/api/"):
                    self._send_json(404, {"error": f"no such endpoint {self.path}"})
                else:
                    self._static(self.path)
            except LocalBiplotsError as exc:
                self._send_json(400, {"error": str(exc)})
            except Exception as exc:  # pragma: no cover - last resort
                self._send_json(500, {"error": f"internal error: {exc}"})

        def do_POST(self):
            try:
                if self.path != "/api/lb":
                    self._send_json(404, {"error": f"no such endpoint {self.path}"})
                    return
                length = int(self.headers.get("Content-Length") or 0)
                raw = self.rfile.read(length) if length else b""
                try:
                    request = json.loads(raw.decode() or "{}")
                except ValueError:
                    self._send_json(400, {"error": "request body is not valid JSON"})
                    return
                self._send_json(200, analysis.lb_payload(request))
            except LocalBiplotsError as exc:
                self._send_json(400, {"error": str(exc)})
            except Exception as exc:  # pragma: no cover - last resort
                self._send_json(500, {"error": f"internal error: {exc}"})

    try:
        return ThreadingHTTPServer((host, port), Handler)
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            raise ValidationError(f"port {port} is already in use") from None
        raise
