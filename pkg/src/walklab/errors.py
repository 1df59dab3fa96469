"""Exception types shared across the package."""


class WalklabError(Exception):
    """Base class for all walklab errors."""


class DomainError(WalklabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(WalklabError, ValueError):
    """A simulation configuration is inconsistent or out of range."""
