"""
Configuration module for gedgm
"""

# Import settings for global access
from gedgm.config.settings import settings
from gedgm.config.logging import initialize_logging

__all__ = ["settings", "initialize_logging"]
