"""
File: base.py
Description: Root of the RingDiag exception hierarchy. Every error raised by
    the domain, the application layer and the adapters carries a message, a
    stable machine-readable code and a details mapping for reports.
Author: RingDiag Team
Created: 2025-06-02
"""

from typing import Any, Dict, Optional


def _details(**values: Any) -> Dict[str, Any]:
    """Keyword values that were supplied, with non-None values stringified
    when they are not plain scalars."""
    details: Dict[str, Any] = {}
    for key, value in values.items():
        if value is None:
            continue
        details[key] = value if isinstance(value, (str, int, float, bool)) else str(value)
    return details


class DomainException(Exception):
    """Base class; `code` identifies the error kind in JSON reports."""

    def __init__(
        self,
        message: str,
        code: str = "domain_error",
        details: Optional[Dict[str, Any]] = None,
    ):
        self.message = message
        self.code = code
        self.details = dict(details or {})
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        return {"message": self.message, "code": self.code, "details": self.details}


class ValidationException(DomainException):
    """An argument or configuration value is out of range.

    Args:
        message: Human-readable description
        field: Name of the offending parameter, when known
        value: The rejected value; stored as text
    """

    def __init__(
        self, message: str, field: Optional[str] = None, value: Optional[Any] = None
    ):
        super().__init__(
            message,
            code="validation_error",
            details=_details(field=field, value=None if value is None else str(value)),
        )


class PreconditionException(DomainException):
    """An operation was called on input outside its domain, such as a
    disconnected topology or a bounce set the fabric does not carry."""

    def __init__(self, message: str, requirement: Optional[str] = None):
        super().__init__(
            message, code="precondition_failed", details=_details(requirement=requirement)
        )


class BusinessRuleViolationException(DomainException):
    """A result breaks a guarantee the algorithms promise."""

    def __init__(self, message: str, rule: Optional[str] = None):
        super().__init__(
            message, code="business_rule_violation", details=_details(rule=rule)
        )


class InfrastructureException(DomainException):
    """Files, settings or report destinations failed."""

    def __init__(self, message: str, component: Optional[str] = None):
        super().__init__(
            message, code="infrastructure_error", details=_details(component=component)
        )
