"""Detector-to-engine bridge: serialize detections, stream them, read reports.

All scoring stays in the engine; this package only normalizes box formats,
emits wire lines, and moves them over a pipe or socket.
"""

from .adapter import (
    BOX_FORMATS,
    DetectionAdapterInput,
    FireDetection,
    ObjectDetection,
    to_frame_record,
    to_xywh,
)
from .transport import (
    DEFAULT_ENGINE_CMD,
    PipeTransport,
    SocketTransport,
    TransportError,
    launch_socket_engine,
    stream_to_engine,
)

__version__ = "0.1.0"

__all__ = [
    "BOX_FORMATS",
    "DEFAULT_ENGINE_CMD",
    "DetectionAdapterInput",
    "FireDetection",
    "ObjectDetection",
    "PipeTransport",
    "SocketTransport",
    "TransportError",
    "launch_socket_engine",
    "stream_to_engine",
    "to_frame_record",
    "to_xywh",
]
