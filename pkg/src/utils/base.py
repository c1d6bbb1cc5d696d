# utils/base.py
import logging

from constants import LOGGER_NAME


class Loggable:
    def __init__(self):
        """Initialize the Loggable class with the certifier logger."""
        self.logger = logging.getLogger(LOGGER_NAME)
