"""
Export utilities for reports and rendered models
Supports text (DOT, .archa) and JSON export into an export directory
"""

import json
import logging
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


def to_json_text(data: Any) -> str:
    """Byte-stable JSON rendering used by every --json output"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def export_text(content: str, output_path) -> bool:
    """Write text content (DOT, .archd, .archa) to a file"""
    try:
        Path(output_path).write_text(content, encoding="utf-8")
        logger.info(f"Exported text to: {output_path}")
        return True
    except OSError as e:
        logger.error(f"Error exporting {output_path}: {e}")
        return False


def export_json(data: Any, output_path) -> bool:
    """Write a JSON document to a file"""
    return export_text(to_json_text(data), output_path)


def create_export_directory(base_path) -> Path:
    """Create export directory if it doesn't exist"""
    base_path = Path(base_path)

    base_path.mkdir(parents=True, exist_ok=True)
    return base_path
