"""Configuration helpers for the rainbow threshold toolkit."""

from src.config.loader import ConfigurationError, Defaults, load_defaults

__all__ = ["ConfigurationError", "Defaults", "load_defaults"]
