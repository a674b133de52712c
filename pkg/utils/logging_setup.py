"""
Logging setup for the command-line entry point.
Library modules only call logging.getLogger(__name__); handlers are installed here once.
"""
import logging
import os
import sys
from datetime import datetime

from dotenv import load_dotenv

load_dotenv()

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def setup_logging(log_dir: str = None, console_level: str = None) -> logging.Logger:
    """
    Set up logging to both console and a timestamped file.

    Args:
        log_dir: Directory for log files. Defaults to DELAY_LOGISTIC_LOG_DIR or 'logs'
        console_level: Level name for the console handler. Defaults to
            DELAY_LOGISTIC_LOG_LEVEL or 'INFO'

    Returns:
        logging.Logger: The root logger of the package
    """
    log_dir = log_dir or os.getenv("DELAY_LOGISTIC_LOG_DIR", "logs")
    console_level = (console_level or os.getenv("DELAY_LOGISTIC_LOG_LEVEL", "INFO")).upper()

    handlers = []
    console = logging.StreamHandler(sys.stdout)
    console.setLevel(getattr(logging, console_level, logging.INFO))
    handlers.append(console)

    log_filename = None
    try:
        os.makedirs(log_dir, exist_ok=True)
        log_filename = os.path.join(log_dir, f'delay_logistic_{datetime.now().strftime("%Y%m%d_%H%M%S")}.log')
        file_handler = logging.FileHandler(log_filename, encoding='utf-8')
        file_handler.setLevel(logging.DEBUG)
        handlers.append(file_handler)
    except OSError as e:
        # Console logging still works without a log file
        print(f"⚠️ Could not create log directory '{log_dir}': {e}")

    logging.basicConfig(level=logging.DEBUG, format=LOG_FORMAT, handlers=handlers, force=True)

    logger = logging.getLogger("delay_logistic")
    if log_filename:
        logger.debug(f"Logging started - Log file: {log_filename}")
    return logger
