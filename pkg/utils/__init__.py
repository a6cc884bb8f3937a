from utils.logging import setup_logger
from utils.config_loader import ConfigLoader, get_config_loader
from utils.file_manager import FileManager

__all__ = [
    'setup_logger',
    'ConfigLoader',
    'get_config_loader',
    'FileManager',
]
