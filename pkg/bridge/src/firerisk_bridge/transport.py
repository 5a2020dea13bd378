"""Synchronous request/response transports to a running engine.

Two transports speak the same one-frame-per-line protocol: PipeTransport
owns an engine subprocess on stdin/stdout, SocketTransport connects to an
engine started with `stream --listen`. One transport serves one stream.
"""

import json
import socket
import subprocess
import sys
from typing import Iterable, Iterator

DEFAULT_ENGINE_CMD = (sys.executable, "-m", "firerisk")


class TransportError(RuntimeError):
    """A frame could not be delivered or answered; carries the engine diagnostic."""


class PipeTransport:
    """Engine child process fed over stdin, answered on stdout."""

    def __init__(self, engine_args: Iterable[str] = (), engine_cmd: Iterable[str] | None = None):
        self._cmd = list(engine_cmd or DEFAULT_ENGINE_CMD) + ["stream", "--stdin", *engine_args]
        self._proc: subprocess.Popen | None = None

    def open(self) -> None:
        if self._proc is None:
            self._proc = subprocess.Popen(
                self._cmd,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                text=True,
            )

    def _diagnostic(self) -> str:
        assert self._proc is not None
        self._proc.stdin.close()
        stderr = self._proc.stderr.read()
        self._proc.wait(timeout=10)
        return stderr.strip() or f"engine exited with code {self._proc.returncode}"

    def send_line(self, line: str) -> None:
        self.open()
        try:
            self._proc.stdin.write(line + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise TransportError(self._diagnostic()) from exc

    def recv_line(self) -> str:
        reply = self._proc.stdout.readline()
        if not reply:
            raise TransportError(self._diagnostic())
        return reply.rstrip("\n")

    def close(self) -> None:
        if self._proc is not None:
            for stream in (self._proc.stdin, self._proc.stdout, self._proc.stderr):
                if stream:
                    stream.close()
            self._proc.wait(timeout=10)
            self._proc = None

    def __enter__(self):
        self.open()
        return self

    def __exit__(self, *exc_info):
        self.close()


class SocketTransport:
    """Client side of an engine listening on host:port."""

    def __init__(self, host: str, port: int):
        self._address = (host, port)
        self._sock: socket.socket | None = None
        self._reader = None

    def open(self) -> None:
        if self._sock is None:
            self._sock = socket.create_connection(self._address, timeout=30)
            self._reader = self._sock.makefile("r", encoding="utf-8", newline="")

    def send_line(self, line: str) -> None:
        self.open()
        try:
            self._sock.sendall((line + "\n").encode("utf-8"))
        except OSError as exc:
            raise TransportError(f"send to {self._address[0]}:{self._address[1]} failed: {exc}") from exc

    def recv_line(self) -> str:
        reply = self._reader.readline()
        if not reply:
            raise TransportError(
                f"engine at {self._address[0]}:{self._address[1]} closed the connection"
            )
        return reply.rstrip("\n")

    def close(self) -> None:
        if self._sock is not None:
            self._reader.close()
            self._sock.close()
            self._sock = None

    def __enter__(self):
        self.open()
        return self

    def __exit__(self, *exc_info):
        self.close()


def stream_to_engine(frame_lines: Iterable[str], transport) -> Iterator[dict]:
    """Send frames one by one, yielding the engine's report per frame in order.

    Transport failures carry the offending frame's id and whatever
    diagnostic the engine produced.
    """
    transport.open()
    try:
        for line in frame_lines:
            try:
                transport.send_line(line)
                yield json.loads(transport.recv_line())
            except TransportError as exc:
                frame_id = None
                try:
                    frame_id = json.loads(line).get("frame_id")
                except ValueError:
                    pass
                raise TransportError(f"frame {frame_id}: {exc}") from exc
    finally:
        transport.close()


def launch_socket_engine(
    engine_args: Iterable[str] = (),
    engine_cmd: Iterable[str] | None = None,
    host: str = "127.0.0.1",
) -> tuple[subprocess.Popen, str, int]:
    """Start an engine listener on an ephemeral port and return its address.

    The engine announces "listening on host:port" on stderr once bound;
    the caller owns the returned process.
    """
    cmd = list(engine_cmd or DEFAULT_ENGINE_CMD) + ["stream", "--listen", f"{host}:0", *engine_args]
    proc = subprocess.Popen(cmd, stderr=subprocess.PIPE, text=True)
    announce = proc.stderr.readline()
    if not announce.startswith("listening on "):
        rest = proc.stderr.read()
        proc.wait(timeout=10)
        raise TransportError(f"engine failed to start: {(announce + rest).strip()}")
    bound_host, _, port_text = announce.strip()[len("listening on "):].rpartition(":")
    return proc, bound_host, int(port_text)
