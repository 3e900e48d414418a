"""Shared exception types."""


class BudgetError(RuntimeError):
    """A computation would exceed its configured resource budget.

    Raised instead of silently degrading; the message names the budget and
    suggests the cheaper route (heuristics, sampling, a larger explicit budget).
    """


class InvalidCertificateError(ValueError):
    """A role word does not describe valid twins for the given word."""
