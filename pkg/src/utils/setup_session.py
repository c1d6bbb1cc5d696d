import os
from datetime import datetime

from utils.base import Loggable


class SessionSetup(Loggable):
    """
    Class to handle session setup including session name generation and directory creation.
    """

    def __init__(self, command, custom_session_name=None, root=None):
        """
        Initialize SessionSetup for one command run.

        Args:
            command (str): Subcommand whose reports go into the session
            custom_session_name (str, optional): Base name, 'session' when omitted
            root (str, optional): Directory holding .sessions, the working directory by default
        """
        super().__init__()
        self.command = command
        self.root = root or os.getcwd()
        self._generate_session_name(custom_session_name)
        self.session_dir = self._setup_directory()

    def _generate_session_name(self, custom_session_name=None):
        """
        Generate a session name with timestamp in format: name_dd_mm_yyyy_hh_mm
        """
        base_name = custom_session_name if custom_session_name else "session"
        timestamp = datetime.now().strftime("%d_%m_%Y_%H_%M")
        self.session_name = f"{base_name}_{timestamp}"
        self.logger.info(f"Generated session name: {self.session_name}")

    def _setup_directory(self):
        """
        Create .sessions/<command>/<session_name>/reports under the root.

        Raises:
            OSError: If directory creation fails
        """
        self.session_dir = os.path.join(self.root, ".sessions", self.command, self.session_name)
        self.session_reports_dir = os.path.join(self.session_dir, "reports")

        try:
            os.makedirs(self.session_reports_dir, exist_ok=True)
            self.logger.info(f"Session directory created: {self.session_dir}")
            return self.session_dir
        except OSError as e:
            self.logger.error(f"Failed to create session directory {self.session_dir}: {e}")
            raise
