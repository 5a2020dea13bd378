"""Command line interface.

Subcommands: assess (batch file to file), stream (stdin or socket, line in,
line out), calibrate (print pixels-per-meter), render (rebuild overlays
from stored outputs), synth (generate a test corpus from a scenario spec).

Exit codes: 0 success, 1 input error, 2 configuration error.
"""

import argparse
import os
import socket
import sys
from typing import Iterable, Iterator, TextIO

from .config import EngineConfig, load_config
from .core import CalibrationScale, CalibrationSource, FrameRecord
from .errors import (
    ConfigError,
    FireRiskError,
    MalformedJson,
    NonPositiveReference,
    SchemaViolation,
    ValidationError,
)
from .geometry import derive_scale
from .overlay import render_overlay
from .synth import generate, load_scenario
from .temporal import stream_assess
from .wire import (
    emit_alert_line,
    emit_frame_line,
    emit_report_line,
    parse_frame_line,
    parse_report_line,
)


def _iter_frames(lines: Iterable[str]) -> Iterator[FrameRecord]:
    """Parse frame lines, prefixing errors with the 1-based line number."""
    for n, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_frame_line(line)
        except (MalformedJson, SchemaViolation, ValidationError) as exc:
            raise type(exc)(f"input line {n}: {exc}") from exc


class _FrameTap:
    """Remembers the frame most recently pulled by a one-in-one-out consumer."""

    def __init__(self, frames: Iterable[FrameRecord]):
        self._frames = frames
        self.last: FrameRecord | None = None

    def __iter__(self) -> Iterator[FrameRecord]:
        for frame in self._frames:
            self.last = frame
            yield frame


def _load_config(path: str | None) -> EngineConfig:
    return load_config(path) if path else EngineConfig()


def _fallback_scale(config: EngineConfig, cli_kappa: float | None) -> CalibrationScale | None:
    """Config-level kappa beats a command-line kappa; frames may still override."""
    if config.kappa is not None:
        return CalibrationScale(kappa=config.kappa, source=CalibrationSource.CONFIG_DEFAULT)
    if cli_kappa is None:
        return None
    try:
        return CalibrationScale(kappa=cli_kappa, source=CalibrationSource.MANUAL)
    except ValueError as exc:
        raise ConfigError(f"--kappa: {exc}") from exc


def _run_pipeline(
    frames: Iterable[FrameRecord],
    config: EngineConfig,
    cli_kappa: float | None,
    out: TextIO,
    alerts_out: TextIO | None = None,
    overlays_dir: str | None = None,
) -> None:
    """Assess frames in order, writing one report line per frame."""
    tap = _FrameTap(frames)
    results = stream_assess(
        tap,
        _fallback_scale(config, cli_kappa),
        config.params,
        metric=config.proximity_metric.value,
        debounce_frames=config.debounce_frames,
    )
    for result in results:
        line = emit_report_line(
            result.report,
            smoothed_risk=result.smoothed_risk,
            smoothed_tier=result.smoothed_tier,
            stream_alerts=result.stream_alerts,
        )
        out.write(line + "\n")
        out.flush()
        if alerts_out is not None:
            for alert in result.stream_alerts:
                alerts_out.write(emit_alert_line(alert) + "\n")
            alerts_out.flush()
        if overlays_dir is not None:
            svg = render_overlay(tap.last, result.report, config)
            path = os.path.join(overlays_dir, f"overlay_{result.report.frame_id}.svg")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(svg)


def _open_output(path: str):
    if path in ("-", "stdout"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _cmd_assess(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    if args.overlays:
        os.makedirs(args.overlays, exist_ok=True)
    out, close_out = _open_output(args.output)
    try:
        with open(args.input, encoding="utf-8") as fh:
            _run_pipeline(_iter_frames(fh), config, args.kappa, out, overlays_dir=args.overlays)
    finally:
        if close_out:
            out.close()
    return 0


def _cmd_stream(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    alerts_out = open(args.alerts, "w", encoding="utf-8") if args.alerts else None
    try:
        if args.listen:
            return _stream_socket(args, config, alerts_out)
        out, close_out = _open_output(args.output)
        try:
            _run_pipeline(_iter_frames(sys.stdin), config, args.kappa, out, alerts_out=alerts_out)
        finally:
            if close_out:
                out.close()
        return 0
    finally:
        if alerts_out is not None:
            alerts_out.close()


def _stream_socket(args: argparse.Namespace, config: EngineConfig, alerts_out: TextIO | None) -> int:
    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise ConfigError(f"--listen must be host:port, got {args.listen!r}")
    server = socket.create_server((host, int(port_text)))
    try:
        bound_host, bound_port = server.getsockname()[:2]
        # Announce the bound address (useful with port 0) before accepting.
        print(f"listening on {bound_host}:{bound_port}", file=sys.stderr, flush=True)
        conn, _ = server.accept()
    finally:
        server.close()

    tee = None
    if args.output and args.output not in ("-", "stdout"):
        tee = open(args.output, "w", encoding="utf-8")
    try:
        with conn, conn.makefile("r", encoding="utf-8", newline="") as reader:
            results = stream_assess(
                _iter_frames(reader),
                _fallback_scale(config, args.kappa),
                config.params,
                metric=config.proximity_metric.value,
                debounce_frames=config.debounce_frames,
            )
            for result in results:
                line = emit_report_line(
                    result.report,
                    smoothed_risk=result.smoothed_risk,
                    smoothed_tier=result.smoothed_tier,
                    stream_alerts=result.stream_alerts,
                )
                conn.sendall((line + "\n").encode("utf-8"))
                if tee is not None:
                    tee.write(line + "\n")
                if alerts_out is not None:
                    for alert in result.stream_alerts:
                        alerts_out.write(emit_alert_line(alert) + "\n")
                    alerts_out.flush()
    finally:
        if tee is not None:
            tee.close()
    return 0


def _cmd_calibrate(args: argparse.Namespace) -> int:
    scale = derive_scale(args.ref_px, args.ref_m)
    print(format(scale.kappa, ".12g"))
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    os.makedirs(args.out, exist_ok=True)
    with open(args.input, encoding="utf-8") as frames_fh, open(args.report, encoding="utf-8") as reports_fh:
        frame_lines = [ln for ln in (l.strip() for l in frames_fh) if ln]
        report_lines = [ln for ln in (l.strip() for l in reports_fh) if ln]
    if len(frame_lines) != len(report_lines):
        raise SchemaViolation(
            f"{len(frame_lines)} frame lines but {len(report_lines)} report lines"
        )
    for n, (frame_line, report_line) in enumerate(zip(frame_lines, report_lines), start=1):
        try:
            frame = parse_frame_line(frame_line)
            parsed = parse_report_line(report_line)
        except (MalformedJson, SchemaViolation, ValidationError) as exc:
            raise type(exc)(f"line {n}: {exc}") from exc
        svg = render_overlay(frame, parsed.report, config)
        path = os.path.join(args.out, f"overlay_{frame.frame_id}.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = load_scenario(args.spec)
    with open(args.out, "w", encoding="utf-8") as fh:
        for frame in generate(spec):
            fh.write(emit_frame_line(frame) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="firerisk",
        description="Proximity-aware fire hazard risk scoring over detection streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assess", help="score a frames file and write a report file")
    p.add_argument("--config", help="engine config JSON (defaults apply when omitted)")
    p.add_argument("--input", required=True, help="frames JSONL file")
    p.add_argument("--output", required=True, help="report JSONL file, or - for stdout")
    p.add_argument("--overlays", help="directory for per-frame SVG overlays")
    p.add_argument("--kappa", type=float, help="pixels per meter when frames/config carry none")
    p.set_defaults(func=_cmd_assess)

    p = sub.add_parser("stream", help="line-delimited frames in, reports out")
    p.add_argument("--config", help="engine config JSON")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--listen", metavar="HOST:PORT", help="serve one socket connection")
    mode.add_argument("--stdin", action="store_true", help="read frames from stdin (default)")
    p.add_argument("--output", default="stdout", help="report JSONL file or stdout")
    p.add_argument("--alerts", help="file receiving stream alerts, one JSON line each")
    p.add_argument("--kappa", type=float, help="pixels per meter when frames/config carry none")
    p.set_defaults(func=_cmd_stream)

    p = sub.add_parser("calibrate", help="print pixels-per-meter from a reference width")
    p.add_argument("--ref-px", type=float, required=True, help="reference width in pixels")
    p.add_argument("--ref-m", type=float, required=True, help="reference width in meters")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("render", help="re-render overlays from stored frames and reports")
    p.add_argument("--config", help="engine config JSON")
    p.add_argument("--input", required=True, help="frames JSONL file")
    p.add_argument("--report", required=True, help="report JSONL file")
    p.add_argument("--out", required=True, help="output directory for SVGs")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("synth", help="generate a frames corpus from a scenario spec")
    p.add_argument("--spec", required=True, help="scenario spec JSON file")
    p.add_argument("--out", required=True, help="frames JSONL file to write")
    p.set_defaults(func=_cmd_synth)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, NonPositiveReference) as exc:
        print(f"firerisk: config error: {exc}", file=sys.stderr)
        return 2
    except (FireRiskError, OSError, ValueError) as exc:
        print(f"firerisk: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
