"""
Exceptions for the polya-cure package.

This module defines the exceptions raised throughout the library, each
carrying a 4-digit error code (4xxx for bad input, 5xxx for failures while
running) and a details dictionary with machine-readable context.
"""

from enum import Enum
from typing import Any, Dict, List, Optional


class ErrorCode(str, Enum):
    """Error codes for polya-cure operations."""

    # Input errors (4xxx)
    MALFORMED_GRAPH = "4001"  # Bad edge-list line, self loop or bad encoding
    DISCONNECTED_GRAPH = "4002"  # Graph has more than one component
    INVALID_GENERATOR = "4003"  # Bad generator parameters or spec string
    INVALID_INITIAL_CONDITION = "4004"  # Non-positive ball counts, bad shapes
    INVALID_INPUT = "4006"  # Negative deltas, infeasible parameters
    INVALID_CONFIGURATION = "4007"  # Config file parse or validation failure

    UNKNOWN_STRATEGY = "4041"  # Strategy id not registered

    ORACLE_LIMIT = "4131"  # Enumeration oracle asked for too large an instance

    # Run errors (5xxx)
    STRATEGY_ERROR = "5001"  # Strategy failed during a trial
    OUTPUT_ERROR = "5002"  # Artifacts could not be written or validated
    PROPERTY_FAILURE = "5003"  # A verified property does not hold

    UNKNOWN_ERROR = "5999"


class PolyaCureError(Exception):
    """Base exception for all polya-cure errors."""

    def __init__(
        self,
        message: str,
        error_code: ErrorCode = ErrorCode.UNKNOWN_ERROR,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.error_code = error_code
        self.details = details or {}

    def __str__(self) -> str:
        base_msg = super().__str__()
        return f"[{self.error_code.value}] {base_msg}"


class GraphError(PolyaCureError):
    """Base exception for graph construction errors."""

    pass


class GraphFormatError(GraphError):
    """Raised when an edge-list line cannot be used."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        details = {"line_number": line_number} if line_number is not None else {}
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message, ErrorCode.MALFORMED_GRAPH, details)


class DisconnectedGraphError(GraphError):
    """Raised when a graph is not connected."""

    def __init__(self, component_count: int, node_count: int):
        message = (
            f"Graph with {node_count} nodes is not connected "
            f"({component_count} components)"
        )
        details = {"component_count": component_count, "node_count": node_count}
        super().__init__(message, ErrorCode.DISCONNECTED_GRAPH, details)


class GraphGenerationError(GraphError):
    """Raised when generator parameters are invalid."""

    def __init__(self, message: str, spec: Optional[str] = None):
        details = {"spec": spec} if spec else {}
        super().__init__(message, ErrorCode.INVALID_GENERATOR, details)


class InitialConditionError(PolyaCureError):
    """Raised when an initial condition violates its invariants."""

    def __init__(self, message: str, field_name: Optional[str] = None):
        details = {"field_name": field_name} if field_name else {}
        super().__init__(message, ErrorCode.INVALID_INITIAL_CONDITION, details)


class InvalidInputError(PolyaCureError):
    """Raised when an operation receives arguments outside its domain."""

    def __init__(self, message: str, field_name: Optional[str] = None):
        details = {"field_name": field_name} if field_name else {}
        super().__init__(message, ErrorCode.INVALID_INPUT, details)


class ConfigurationError(PolyaCureError):
    """Raised when an experiment configuration cannot be loaded."""

    def __init__(
        self,
        message: str,
        config_key: Optional[str] = None,
        validation_errors: Optional[List[str]] = None,
    ):
        details = {
            "config_key": config_key,
            "validation_errors": validation_errors or [],
        }
        super().__init__(message, ErrorCode.INVALID_CONFIGURATION, details)


class UnknownStrategyError(PolyaCureError):
    """Raised when a strategy id is not registered."""

    def __init__(self, name: str, available: Optional[List[str]] = None):
        message = f"Strategy '{name}' not found"
        if available:
            message += f". Available strategies: {', '.join(available)}"
        details = {"strategy": name, "available_strategies": available or []}
        super().__init__(message, ErrorCode.UNKNOWN_STRATEGY, details)


class OracleLimitError(PolyaCureError):
    """Raised when an enumeration oracle is asked for an intractable size."""

    def __init__(self, message: str, limit: Optional[int] = None):
        details = {"limit": limit} if limit is not None else {}
        super().__init__(message, ErrorCode.ORACLE_LIMIT, details)


class StrategyError(PolyaCureError):
    """Raised when a curing strategy fails inside a trial."""

    def __init__(
        self,
        message: str,
        strategy: Optional[str] = None,
        step: Optional[int] = None,
    ):
        details = {"strategy": strategy, "step": step}
        super().__init__(message, ErrorCode.STRATEGY_ERROR, details)


class OutputError(PolyaCureError):
    """Raised when run artifacts cannot be written."""

    def __init__(self, message: str, path: Optional[str] = None):
        details = {"path": path} if path else {}
        super().__init__(message, ErrorCode.OUTPUT_ERROR, details)


class PropertyCheckError(PolyaCureError):
    """Raised when a verified property fails and the caller asked to fail fast."""

    def __init__(self, message: str, property_name: Optional[str] = None):
        details = {"property_name": property_name} if property_name else {}
        super().__init__(message, ErrorCode.PROPERTY_FAILURE, details)
