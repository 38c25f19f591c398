"""Prime divisors of binary recurrences and the two-variable Artin set."""

__version__ = "0.1.0"
