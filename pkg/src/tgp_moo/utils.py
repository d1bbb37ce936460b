"""
Utility functions shared by the library and the command line.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Union

import yaml

# Numeric text output keeps at least 6 significant digits.
FLOAT_FORMAT = '%.12g'

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def setup_logging(verbose: bool = False, quiet: bool = False):
    """Configure root logging to stderr once per process."""
    level = logging.INFO
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def load_yaml(filepath: Union[str, Path]) -> Dict[str, Any]:
    """Load a YAML mapping from file.

    Args:
        filepath: Path to a YAML document whose top level is a mapping

    Returns:
        The parsed mapping (empty for an empty file)
    """
    with open(filepath, 'r', encoding='utf-8') as f:
        data = yaml.safe_load(f)

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"{filepath}: expected a mapping at the top level")
    return data


def load_json(filepath: Union[str, Path]) -> Any:
    with open(filepath, 'r', encoding='utf-8') as f:
        return json.load(f)


def save_json(data: Any, filepath: Union[str, Path]):
    """Write JSON with stable key order and a trailing newline."""
    with open(filepath, 'w', encoding='utf-8') as f:
        json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write('\n')
