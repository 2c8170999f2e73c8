"""
File: infrastructure.py
Description: Exceptions raised while reading configuration and topology files
Author: RingDiag Team
Created: 2025-06-03
"""

from typing import Optional

from .base import InfrastructureException


class ConfigurationException(InfrastructureException):
    """Exception raised for configuration errors"""

    def __init__(self, message: str):
        super().__init__(message, component="configuration")


class TopologySourceException(InfrastructureException):
    """Exception raised when a topology file cannot be read"""

    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(message, component="topology_source")
        self.code = "topology_source_error"
        if source is not None:
            self.details["source"] = source


class TopologyParseException(TopologySourceException):
    """Exception raised for malformed GraphML or edge-list documents"""

    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(message, source)
        self.code = "topology_parse_error"


class UnsupportedTopologyFormatException(TopologySourceException):
    """Exception raised for directed graphs and unknown file types"""

    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(message, source)
        self.code = "unsupported_topology_format"


class EmptyTopologyException(TopologySourceException):
    """Exception raised when a document declares no switches or no links"""

    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(message, source)
        self.code = "empty_topology"
