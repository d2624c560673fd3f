"""Local HTTP/JSON API over the scenario engine.

Routes:
    GET  /api/health     -- liveness + engine version
    GET  /api/platforms  -- the platform catalog with computed metrics
    GET  /api/presets    -- bundled scenario presets
    POST /api/scenario   -- evaluate one scenario document
    POST /api/sweep      -- evaluate a scenario's sweep points

Validation failures return 400 with one entry per offending field path; a 500
is never the answer to bad user input. When a static directory is configured
(the what-if explorer build), it is served at ``/``.
"""

from __future__ import annotations

import hashlib
import json
import mimetypes
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .engine import ENGINE_VERSION, run_scenario, run_sweep, validate_spec
from .errors import ConfigError
from .platforms import PlatformCatalog, load_catalog
from .presets import PRESETS

MAX_BODY_BYTES = 8 * 1024 * 1024


def _catalog_digest(catalog: PlatformCatalog) -> str:
    doc = json.dumps([p.__dict__ | {
        "macro_config": p.macro_config.__dict__,
        "micro_config": p.micro_config.__dict__,
    } for p in catalog.platforms], sort_keys=True, default=str)
    return hashlib.sha256(doc.encode()).hexdigest()


class EngineHandler(BaseHTTPRequestHandler):
    server_version = f"ranshare/{ENGINE_VERSION}"
    catalog: PlatformCatalog
    static_dir: Path | None = None

    def log_message(self, fmt, *args):  # quiet by default; tests spin servers up
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length", 0))
        if length > MAX_BODY_BYTES:
            raise ConfigError([("", f"request body exceeds {MAX_BODY_BYTES} bytes")])
        raw = self.rfile.read(length) if length else b"{}"
        try:
            doc = json.loads(raw or b"{}")
        except json.JSONDecodeError as exc:
            raise ConfigError([("", f"invalid JSON: {exc}")]) from exc
        if not isinstance(doc, dict):
            raise ConfigError([("", "request body must be a JSON object")])
        return doc

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self) -> None:
        if self.path == "/api/health":
            self._send_json(200, {
                "status": "ok",
                "engine": {"name": "ranshare", "version": ENGINE_VERSION},
                "config_digest": _catalog_digest(self.catalog),
            })
        elif self.path == "/api/platforms":
            self._send_json(200, {
                "config_digest": _catalog_digest(self.catalog),
                "platforms": self.catalog.table_rows(),
                "families": sorted(self.catalog.families()),
            })
        elif self.path == "/api/presets":
            digest = hashlib.sha256(
                json.dumps(PRESETS, sort_keys=True).encode()
            ).hexdigest()
            self._send_json(200, {"config_digest": digest, "presets": PRESETS})
        elif self.static_dir is not None:
            self._serve_static()
        else:
            self._send_json(404, {"errors": [{"field": "", "message": f"no route {self.path}"}]})

    def do_POST(self) -> None:
        if self.path not in ("/api/scenario", "/api/sweep"):
            self._send_json(404, {"errors": [{"field": "", "message": f"no route {self.path}"}]})
            return
        try:
            doc = self._read_body()
            preset_name = doc.pop("preset", None)
            if preset_name is not None and preset_name not in PRESETS:
                raise ConfigError([("preset", f"unknown preset {preset_name!r}")])
            spec = validate_spec(doc, preset_name=preset_name, catalog=self.catalog)
            if self.path == "/api/scenario":
                bundle = run_scenario(spec, self.catalog)
                self._send_json(200, bundle.to_api_dict())
            else:
                bundles = run_sweep(spec, self.catalog)
                self._send_json(200, {
                    "config_digest": spec.config_digest(),
                    "bundles": [b.to_api_dict() for b in bundles],
                })
        except ConfigError as exc:
            self._send_json(400, {
                "errors": [{"field": path, "message": msg} for path, msg in exc.violations],
            })
        except (ValueError, KeyError) as exc:
            self._send_json(400, {"errors": [{"field": "", "message": str(exc)}]})

    def _serve_static(self) -> None:
        rel = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        root = self.static_dir.resolve()
        if root not in target.parents and target != root:
            self._send_json(404, {"errors": [{"field": "", "message": "not found"}]})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"errors": [{"field": "", "message": f"no route {self.path}"}]})
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(host: str = "127.0.0.1", port: int = 8180,
                catalog: PlatformCatalog | None = None,
                static_dir: str | Path | None = None,
                verbose: bool = False) -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server; port 0 picks a free port."""
    handler = type("BoundHandler", (EngineHandler,), {
        "catalog": catalog if catalog is not None else load_catalog(),
        "static_dir": Path(static_dir) if static_dir else None,
    })
    server = ThreadingHTTPServer((host, port), handler)
    server.verbose = verbose
    return server


def serve(host: str, port: int, catalog: PlatformCatalog | None = None,
          static_dir: str | Path | None = None) -> None:
    server = make_server(host, port, catalog, static_dir, verbose=True)
    print(f"ranshare engine listening on http://{host}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
