"""Run the service on a real TCP port inside the current process.

The demo and the tests need a live server without shelling out; this
wraps uvicorn in a background thread. Port 0 asks the OS for a free port;
``base_url`` reports what was actually bound.
"""

from __future__ import annotations

import threading
import time

import uvicorn
from fastapi import FastAPI

STARTUP_TIMEOUT_S = 15.0


class EmbeddedServer:
    def __init__(self, app: FastAPI, host: str = "127.0.0.1", port: int = 0) -> None:
        self._host = host
        self._server = uvicorn.Server(
            uvicorn.Config(
                app=app, host=host, port=port, log_level="warning", access_log=False
            )
        )
        self._thread = threading.Thread(
            target=self._server.run, name="safekeeper-embedded", daemon=True
        )
        self._port: int | None = None

    @property
    def base_url(self) -> str:
        if self._port is None:
            raise RuntimeError("server not started")
        return f"http://{self._host}:{self._port}"

    def start(self) -> "EmbeddedServer":
        self._thread.start()
        deadline = time.monotonic() + STARTUP_TIMEOUT_S
        while not self._server.started:
            if not self._thread.is_alive():
                raise RuntimeError("embedded server exited during startup")
            if time.monotonic() > deadline:
                raise RuntimeError("embedded server did not start in time")
            time.sleep(0.01)
        sockets = self._server.servers[0].sockets
        self._port = sockets[0].getsockname()[1]
        return self

    def stop(self) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=STARTUP_TIMEOUT_S)
        if self._thread.is_alive():
            raise RuntimeError("embedded server did not shut down")

    def __enter__(self) -> "EmbeddedServer":
        return self.start()

    def __exit__(self, *_exc_info: object) -> None:
        self.stop()
