"""
Shared utility for loading environment variables across the toolkit.
"""

import os

from dotenv import load_dotenv

from src.utils.logging_config import get_logger

logger = get_logger(__name__)


def load_environment_variables() -> str:
    """
    Load environment variables with proper precedence:
    1. Load base environment from .env
    2. Override with .env.local if it exists (for local development)

    The outcome is logged, never printed: stdout carries reports only.

    Returns:
        str: A message indicating which configuration was loaded
    """
    load_dotenv()

    if os.path.exists(".env.local"):
        load_dotenv(".env.local", override=True)
        message = "Loaded .env + .env.local (local overrides)"
    else:
        message = "Loaded .env only"

    logger.debug(message)
    return message
