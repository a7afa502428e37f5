"""Safekeeper: a tamper-evident usage log with fail-closed instrumentation.

The package splits into the chain and query primitives (``core``), request
signing and replay protection (``auth``), the HTTP service and its storage
(``service``), the client-side logging guard (``monitor``), and the example
analyses the demo instruments (``analytics``).
"""

__version__ = "0.1.0"
