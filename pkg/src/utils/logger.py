# src/utils/logger.py
import logging
import os
import sys


def setup_logger(name, log_file="logs/run.log", level=logging.INFO):
    """Set up the logger with the specified log level.

    Records go to `log_file` and to stderr; stdout is reserved for reports.

    Args:
        name: The name of the logger.
        log_file: The file to which logs should be written, or None for console only.
        level: The logging level to use. Default is INFO.
    """
    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")

    logger = logging.getLogger(name)
    logger.setLevel(level)

    if not logger.handlers:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

        if log_file:
            log_dir = os.path.dirname(log_file)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

    return logger
