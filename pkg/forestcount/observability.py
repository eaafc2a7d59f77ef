"""
Observability Module
Provides OpenTelemetry instrumentation for the forest counting library
- Decoupled from the combinatorics
- Decorator-based instrumentation
- Configurable exporters

Nothing in this module writes to stdout: CLI stdout carries data with
byte-exact contracts, so console exporters and status lines use stderr.
"""

import functools
import inspect
import os
import sys
import time
from datetime import datetime
from typing import Any, Callable, Dict, Optional

import yaml

from opentelemetry import metrics, trace
from opentelemetry.sdk.metrics import MeterProvider
from opentelemetry.sdk.metrics.export import ConsoleMetricExporter, PeriodicExportingMetricReader
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor, ConsoleSpanExporter
from opentelemetry.sdk.trace.sampling import TraceIdRatioBased

CONFIG_FILENAME = 'observability_config.yaml'

DEFAULT_CONFIG: Dict[str, Any] = {
    'enabled': True,
    'service_name': 'forestcount',
    'service_version': '1.0.0',
    'exporters': {
        'console': False,
        'otlp': False
    },
    'otlp_endpoint': 'http://localhost:4317',
    'sampling_rate': 1.0
}

# Global state
_config: Optional[Dict[str, Any]] = None
_tracer = None
_meter = None
_initialized = False


# ============================================================================
# Configuration Loading
# ============================================================================

def default_config_dir() -> str:
    """The config/ directory next to the package"""
    return os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config')


def load_config(config_dir: Optional[str] = None) -> Dict[str, Any]:
    """Load observability configuration from YAML, falling back to defaults"""
    config_path = os.path.join(config_dir or default_config_dir(), CONFIG_FILENAME)

    if os.path.exists(config_path):
        with open(config_path, 'r') as f:
            loaded = yaml.safe_load(f) or {}
        config = dict(DEFAULT_CONFIG)
        config.update(loaded)
        return config

    return dict(DEFAULT_CONFIG)


def _otlp_flags(config: Dict[str, Any]) -> Dict[str, bool]:
    # exporters.otlp is either a bool or {traces: bool, metrics: bool}
    otlp = (config.get('exporters') or {}).get('otlp', False)
    if isinstance(otlp, dict):
        return {'traces': bool(otlp.get('traces', True)), 'metrics': bool(otlp.get('metrics', False))}
    return {'traces': bool(otlp), 'metrics': bool(otlp)}


# ============================================================================
# OTEL Initialization
# ============================================================================

def init_observability(config_dir: Optional[str] = None, verbose: bool = False):
    """Initialize OpenTelemetry providers and exporters (idempotent)"""
    global _config, _tracer, _meter, _initialized

    if _initialized:
        return

    _config = load_config(config_dir)

    if not _config.get('enabled', True):
        if verbose:
            print("📊 Observability: Disabled by configuration", file=sys.stderr)
        _initialized = True
        return

    resource = Resource.create({
        "service.name": _config.get('service_name', 'forestcount'),
        "service.version": _config.get('service_version', '1.0.0'),
    })

    console_enabled = bool((_config.get('exporters') or {}).get('console', False))
    otlp = _otlp_flags(_config)

    # Tracing
    trace_provider = TracerProvider(
        resource=resource,
        sampler=TraceIdRatioBased(float(_config.get('sampling_rate', 1.0)))
    )

    if console_enabled:
        trace_provider.add_span_processor(BatchSpanProcessor(ConsoleSpanExporter(out=sys.stderr)))

    if otlp['traces']:
        from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
        trace_provider.add_span_processor(BatchSpanProcessor(
            OTLPSpanExporter(endpoint=_config.get('otlp_endpoint'), insecure=True)
        ))

    trace.set_tracer_provider(trace_provider)
    _tracer = trace.get_tracer(__name__)

    # Metrics
    metric_readers = []

    if console_enabled:
        metric_readers.append(PeriodicExportingMetricReader(ConsoleMetricExporter(out=sys.stderr)))

    if otlp['metrics']:
        from opentelemetry.exporter.otlp.proto.grpc.metric_exporter import OTLPMetricExporter
        metric_readers.append(PeriodicExportingMetricReader(
            OTLPMetricExporter(endpoint=_config.get('otlp_endpoint'), insecure=True)
        ))

    metrics.set_meter_provider(MeterProvider(resource=resource, metric_readers=metric_readers))
    _meter = metrics.get_meter(__name__)

    if verbose:
        active = []
        if console_enabled:
            active.append('console')
        if otlp['traces']:
            active.append('otlp-traces')
        if otlp['metrics']:
            active.append('otlp-metrics')
        print(f"📊 Observability: Initialized for {_config.get('service_name')}", file=sys.stderr)
        print(f"   Exporters: {', '.join(active) if active else 'none'}", file=sys.stderr)

    _initialized = True


def is_enabled() -> bool:
    """True once initialized with telemetry switched on"""
    return _initialized and _tracer is not None and bool(_config and _config.get('enabled', True))


# ============================================================================
# Metrics Helpers
# ============================================================================

class ForestMetrics:
    """Metric instruments for counting, enumeration and verification"""

    def __init__(self):
        self.operation_calls = None
        self.operation_errors = None
        self.operation_duration = None
        self.structures_enumerated = None
        self.verification_failures = None

        if not _meter:
            return

        # Counters
        self.operation_calls = _meter.create_counter(
            name="forestcount.operations.total",
            description="Total number of instrumented operation calls",
            unit="1"
        )

        self.operation_errors = _meter.create_counter(
            name="forestcount.errors.total",
            description="Total number of failed operation calls",
            unit="1"
        )

        self.structures_enumerated = _meter.create_counter(
            name="forestcount.structures.enumerated",
            description="Forests produced by exhaustive enumeration",
            unit="1"
        )

        self.verification_failures = _meter.create_counter(
            name="forestcount.verification.failures",
            description="Verification reports with at least one failed check",
            unit="1"
        )

        # Histograms
        self.operation_duration = _meter.create_histogram(
            name="forestcount.operation.duration.seconds",
            description="Instrumented operation duration",
            unit="s"
        )


_metrics: Optional[ForestMetrics] = None


def get_metrics() -> ForestMetrics:
    """Get or create the global metrics instance"""
    global _metrics
    if _metrics is None or (_meter is not None and _metrics.operation_calls is None):
        _metrics = ForestMetrics()
    return _metrics


def record_enumerated(kind: str, n: int, count: int):
    """Add an enumeration tally to the structures counter"""
    if not is_enabled():
        return
    counter = get_metrics().structures_enumerated
    if counter:
        counter.add(count, {"forest.kind": kind, "forest.n": n})


def record_verification_failure(n: int):
    if not is_enabled():
        return
    counter = get_metrics().verification_failures
    if counter:
        counter.add(1, {"forest.n": n})


# ============================================================================
# Instrumentation Decorators
# ============================================================================

def _span_attributes(name: str, bound: inspect.BoundArguments) -> Dict[str, Any]:
    attributes: Dict[str, Any] = {"operation.name": name}
    for key, value in bound.arguments.items():
        # OTel attributes are 64-bit; skip anything that is not a small scalar
        if isinstance(value, bool) or (isinstance(value, int) and abs(value) < 2 ** 63):
            attributes[f"operation.arg.{key}"] = value
        elif isinstance(value, str):
            attributes[f"operation.arg.{key}"] = value
    return attributes


def instrument_operation(name: str) -> Callable[[Callable], Callable]:
    """
    Decorator that wraps a top-level operation in a span and records metrics

    Usage:
        @instrument_operation("takacs_count")
        def takacs_count(n):
            ...
    """

    def decorator(func: Callable) -> Callable:
        signature = inspect.signature(func)

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            if not is_enabled():
                return func(*args, **kwargs)

            forest_metrics = get_metrics()
            start_time = time.time()
            bound = signature.bind_partial(*args, **kwargs)

            with _tracer.start_as_current_span(name, attributes=_span_attributes(name, bound)) as span:
                if forest_metrics.operation_calls:
                    forest_metrics.operation_calls.add(1, {"operation.name": name})

                try:
                    result = func(*args, **kwargs)
                except Exception as e:
                    duration = time.time() - start_time
                    if forest_metrics.operation_duration:
                        forest_metrics.operation_duration.record(
                            duration, {"operation.name": name, "status": "error"}
                        )
                    if forest_metrics.operation_errors:
                        forest_metrics.operation_errors.add(
                            1, {"operation.name": name, "error.type": type(e).__name__}
                        )
                    span.set_status(trace.Status(trace.StatusCode.ERROR, str(e)))
                    span.record_exception(e)
                    raise

                duration = time.time() - start_time
                if forest_metrics.operation_duration:
                    forest_metrics.operation_duration.record(
                        duration, {"operation.name": name, "status": "success"}
                    )
                if isinstance(result, int) and not isinstance(result, bool):
                    span.set_attribute("operation.result.digits", len(str(abs(result))))

                span.set_status(trace.Status(trace.StatusCode.OK))
                return result

        return wrapper

    return decorator


# ============================================================================
# Command-Level Spans
# ============================================================================

class DummySpan:
    """No-op context manager when observability is disabled"""
    def __enter__(self):
        return self
    def __exit__(self, *args):
        pass
    def set_attribute(self, *args):
        pass
    def add_event(self, *args):
        pass


def create_operation_span(span_name: str, **attributes):
    """Create a span around a CLI command or other multi-step operation"""
    if not is_enabled():
        return DummySpan()

    attributes.setdefault("operation.timestamp", datetime.now().isoformat())
    return _tracer.start_as_current_span(span_name, attributes=attributes)


def log_event(event_name: str, attributes: Optional[Dict[str, Any]] = None):
    """Log a custom event in the current span"""
    if not is_enabled():
        return

    current_span = trace.get_current_span()
    if current_span:
        current_span.add_event(event_name, attributes or {})
