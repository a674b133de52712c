import json
from pathlib import Path
from typing import Any, Dict

from .errors import ConfigError


class TextReader:
    """
    Reads text and JSON files relative to the application root directory.
    Absolute paths are used as given.
    """

    def __init__(self, root_dir: Path = None):
        self._root_dir = Path(root_dir) if root_dir else self._get_application_root()

    def _get_application_root(self) -> Path:
        # Go up from utils directory to project root
        return Path(__file__).parent.parent

    def get_full_path(self, relative_path: str) -> Path:
        """
        Get the full path for a path given relative to the application root.

        Args:
            relative_path: Relative or absolute path

        Returns:
            Path object
        """
        path = Path(relative_path)
        if path.is_absolute() or path.exists():
            return path
        return self._root_dir / path

    def read_file(self, relative_path: str) -> str:
        """
        Read a text file.

        Raises:
            FileNotFoundError: If the file doesn't exist
            IOError: If there's an error reading the file
        """
        full_path = self.get_full_path(relative_path)
        try:
            with open(full_path, 'r', encoding='utf-8') as file:
                return file.read()
        except FileNotFoundError:
            raise FileNotFoundError(f"File not found: {full_path}")
        except OSError as e:
            raise IOError(f"Error reading file {full_path}: {str(e)}")

    def read_json(self, relative_path: str) -> Dict[str, Any]:
        """
        Read a JSON object from a file.

        Raises:
            ConfigError: If the file is missing, unreadable or not a JSON object
        """
        try:
            content = self.read_file(relative_path)
        except (FileNotFoundError, IOError) as e:
            raise ConfigError(str(e)) from e
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON in {relative_path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"Config file {relative_path} must contain a JSON object")
        return data


# Convenience instance for easy importing
text_reader = TextReader()
