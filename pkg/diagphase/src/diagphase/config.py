"""
Configuration Module

Package-wide defaults plus the two override paths: environment variables and
JSON/TOML files (used by the Hamiltonian-simulation estimator).
"""

import json
import logging
import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    tomllib = None

from .errors import InvalidParameterError

logger = logging.getLogger(__name__)


DEFAULTS = {
    # dense sampling of derivative norms: R samples per finest cell
    'norm_resolution': 64,
    # lattice exponent used when sup_norm samples a full interval
    'norm_lattice': 12,
    'max_simulation_width': 14,
    'sweep_deltas': [1e-1, 1e-2, 1e-3, 1e-4, 1e-6],
    'delta_grid_density': 40,
    'apk_constant': 1.0,
    'trotter_constant': 1.0,
    'distance_overhead': 0,
}


def get_setting(key, data=None):
    """
    Look up a setting, preferring an explicit data dictionary, then the
    environment, then DEFAULTS.

    Args:
        key (str): Setting name (a DEFAULTS key)
        data (dict): Optional overrides

    Returns:
        The resolved value
    """
    if data is not None and key in data:
        return data[key]
    env_key = f"DIAGPHASE_{key.upper()}"
    if env_key in os.environ:
        default = DEFAULTS.get(key)
        raw = os.environ[env_key]
        try:
            return type(default)(raw) if default is not None else raw
        except (TypeError, ValueError):
            logger.warning("Ignoring unparsable %s=%r", env_key, raw)
    return DEFAULTS.get(key)


def thread_count():
    """Worker-pool size, bounded by DIAGPHASE_THREADS when set."""
    raw = os.environ.get('DIAGPHASE_THREADS')
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("Ignoring non-integer DIAGPHASE_THREADS=%r", raw)
    return max(1, min(8, os.cpu_count() or 1))


def load_config(path):
    """
    Read a JSON or TOML configuration file into a dictionary.

    Args:
        path (str): File path; the suffix selects the format

    Returns:
        dict: Parsed configuration
    """
    path = str(path)
    if path.endswith('.toml'):
        if tomllib is None:
            raise InvalidParameterError("TOML configuration needs Python 3.11+")
        with open(path, 'rb') as fh:
            return tomllib.load(fh)
    with open(path, 'r', encoding='utf-8') as fh:
        return json.load(fh)
