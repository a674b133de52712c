"""
File utilities for the delay logistic toolkit
Handles output directory resolution and filename generation
"""
import os

from dotenv import load_dotenv

from .errors import OutputError

load_dotenv()

DEFAULT_OUTPUT_DIR = "output"


def get_app_data_path(relative_path):
    """Get path for runtime data (results, logs) relative to the working directory"""
    return os.path.join(os.path.abspath("."), relative_path)


def get_output_directory(output_dir=None):
    """Resolve the output directory: explicit argument, then DELAY_LOGISTIC_OUTPUT_DIR, then ./output"""
    if output_dir:
        return os.path.abspath(output_dir)
    return get_app_data_path(os.getenv("DELAY_LOGISTIC_OUTPUT_DIR", DEFAULT_OUTPUT_DIR))


def ensure_output_directory(output_dir=None):
    """
    Ensure the output directory exists and is writable.

    Raises:
        OutputError: If the directory cannot be created or written to
    """
    directory = get_output_directory(output_dir)
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise OutputError(f"Cannot create output directory {directory}: {e}") from e
    if not os.access(directory, os.W_OK):
        raise OutputError(f"Output directory is not writable: {directory}")
    return directory
