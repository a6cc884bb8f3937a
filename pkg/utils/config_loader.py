import os
import yaml
from pathlib import Path
from typing import Dict, Any
from utils.logging import setup_logger

DEFAULT_DIM_CAP = 400


class ConfigLoader:
    """Configuration loader providing unified configuration reading functionality"""

    _instance = None  # Singleton instance

    def __new__(cls):
        """Implement singleton pattern"""
        if cls._instance is None:
            cls._instance = super(ConfigLoader, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        """Initialize the configuration loader"""
        # Skip if already initialized
        if getattr(self, "_initialized", False):
            return

        self.logger = setup_logger("Config Loader")
        self.logger.debug("Initializing ConfigLoader")

        # Configuration file lives next to the packages, not in the working directory
        self.config_dir = Path(__file__).resolve().parent.parent / "configs"
        self.config_file = self.config_dir / "config.yaml"

        # Configuration cache
        self._config = None

        # Mark as initialized
        self._initialized = True

    def get_config(self, reload: bool = False) -> Dict[str, Any]:
        """
        Get main configuration

        :param reload: Whether to reload the configuration file, defaults to False
        :return: Configuration dictionary
        """
        if self._config is None or reload:
            try:
                if not self.config_file.exists():
                    self.logger.warning(f"Config file not found: {self.config_file}, using defaults")
                    self._config = {}
                    return self._config

                with open(self.config_file, 'r', encoding='utf-8') as f:
                    self._config = yaml.safe_load(f) or {}
                self.logger.debug("Loaded main configuration")
            except Exception as e:
                self.logger.error(f"Error loading config: {str(e)}")
                self._config = {}

        return self._config

    def get_system_config(self) -> Dict[str, Any]:
        """
        Get system configuration

        :return: System configuration dictionary
        """
        config = self.get_config()
        return config.get('system', {})

    def get_dim_cap(self) -> int:
        """
        Get the maximum quotient dimension; WEILAB_DIM_CAP overrides the config file

        :return: Dimension cap
        """
        override = os.getenv("WEILAB_DIM_CAP")
        if override:
            try:
                return int(override)
            except ValueError:
                self.logger.warning(f"Ignoring non-integer WEILAB_DIM_CAP={override!r}")
        return int(self.get_system_config().get('dim_cap', DEFAULT_DIM_CAP))

    def get_classify_config(self) -> Dict[str, Any]:
        """
        Get triviality classification configuration

        :return: Classification configuration dictionary
        """
        config = self.get_config()
        return config.get('classify', {})

    def get_weight_bound(self, r: int) -> int:
        """
        Default weight search bound for truncation order r

        :param r: Truncation order
        :return: weight_bound_factor * r
        """
        factor = int(self.get_classify_config().get('weight_bound_factor', 4))
        return max(1, factor * r)

    def get_autos_config(self) -> Dict[str, Any]:
        """
        Get automorphism checks configuration

        :return: Automorphism configuration dictionary
        """
        config = self.get_config()
        return config.get('autos', {})

    def get_constraints_config(self) -> Dict[str, Any]:
        """
        Get constraint-system configuration

        :return: Constraint configuration dictionary
        """
        config = self.get_config()
        return config.get('constraints', {})

    def get_scan_config(self) -> Dict[str, Any]:
        """
        Get scan harness defaults

        :return: Scan configuration dictionary
        """
        config = self.get_config()
        return config.get('scan', {})


def get_config_loader() -> ConfigLoader:
    """
    Get configuration loader instance

    :return: ConfigLoader instance
    """
    return ConfigLoader()
