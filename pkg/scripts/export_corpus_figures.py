#!/usr/bin/env python3
"""
Export DOT and JSON renderings of every corpus diagram and architecture
Render the DOT files with Graphviz, e.g. `dot -Tsvg star.dot -o star.svg`
"""

import sys
import os
from pathlib import Path
import logging

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.dsl.exporters import export_corpus

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).parent.parent


def main():
    """Main export function"""
    logger.info("="*60)
    logger.info("Corpus Figure Export")
    logger.info("="*60)

    corpus_dir = PROJECT_ROOT / "data" / "corpus"
    if not corpus_dir.exists():
        logger.error(f"Corpus not found: {corpus_dir}")
        return 1

    exports_dir = PROJECT_ROOT / "data" / "exports"
    try:
        written = export_corpus(corpus_dir, exports_dir)
    except Exception as e:
        logger.error(f"Export failed: {e}")
        return 1

    for source, files in written.items():
        logger.info(f"  {source}: {', '.join(files)}")

    logger.info("\n" + "="*60)
    logger.info("Export Complete!")
    logger.info("="*60)
    logger.info(f"\nFiles saved to: {exports_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
