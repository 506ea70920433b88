"""Shared exception types."""


class ConfigurationError(ValueError):
    """Raised when a caller-supplied configuration violates a contract.

    The command line maps this to exit code 2.
    """
