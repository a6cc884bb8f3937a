import json
from pathlib import Path
from typing import Any, Dict, Union

from algebra.exceptions import SpecFileError
from models.algebra_spec import AlgebraSpec
from utils.logging import setup_logger


class FileManager:
    """File manager responsible for reading algebra specs and writing reports"""

    def __init__(self):
        """Initialize the file manager"""
        self.logger = setup_logger("File Manager")

    def read_algebra_spec(self, path: Union[str, Path]) -> AlgebraSpec:
        """
        Read an algebra spec file

        :param path: Path to a `.weil` file
        :return: Parsed AlgebraSpec; the file stem is the name unless the file declares one
        """
        file_path = Path(path)
        self.logger.debug(f"Reading algebra spec from {file_path}")

        if not file_path.exists():
            raise SpecFileError("File not found", str(file_path))

        try:
            text = file_path.read_text(encoding='utf-8')
        except (OSError, UnicodeDecodeError) as e:
            raise SpecFileError(f"Cannot read file: {e}", str(file_path))

        spec = AlgebraSpec.from_text(text, name=file_path.stem, source=str(file_path))
        self.logger.info(f"Read spec {spec.name} with {len(spec.generators)} generators from {file_path}")
        return spec

    def save_json(self, data: Union[Dict[str, Any], str], path: Union[str, Path]) -> bool:
        """
        Save a report as JSON

        :param data: Report dictionary, or already rendered JSON text
        :param path: Output file path
        :return: Whether save was successful
        """
        try:
            file_path = Path(path)
            file_path.parent.mkdir(parents=True, exist_ok=True)
            text = data if isinstance(data, str) else json.dumps(data, ensure_ascii=False, indent=2)
            file_path.write_text(text if text.endswith("\n") else text + "\n", encoding='utf-8')
            self.logger.info(f"Saved JSON report to {file_path}")
            return True

        except Exception as e:
            self.logger.error(f"Error saving JSON report: {str(e)}")
            return False

    def save_text(self, text: str, path: Union[str, Path]) -> bool:
        """
        Save plain text (constraint exports)

        :param text: Text content
        :param path: Output file path
        :return: Whether save was successful
        """
        try:
            file_path = Path(path)
            file_path.parent.mkdir(parents=True, exist_ok=True)
            file_path.write_text(text, encoding='utf-8')
            self.logger.info(f"Saved {len(text.splitlines())} lines to {file_path}")
            return True

        except Exception as e:
            self.logger.error(f"Error saving text file: {str(e)}")
            return False
