"""Fundamental domains for lifted triangle groups on the universal cover of SU(1,1).

Settings use the same keys as the flat config file: ``preset``, ``signature``,
``level``, ``offsets``, ``vertex``, ``epsilon``, ``samples``, ``seed`` and so on.
"""

from pathlib import Path

from ._lfd import Error, json_number, presets, so2, so11
from . import _lfd

__all__ = ["Error", "compute", "export", "verify_tiling", "presets", "so2", "so11", "json_number", "schema_path"]


def compute(**settings):
    return _lfd.compute(settings)


def export(out, **settings):
    return _lfd.export(str(out), settings)


def verify_tiling(**settings):
    return _lfd.verify_tiling(settings)


def schema_path():
    """Location of the report JSON schema shipped with the package."""
    return Path(__file__).with_name("report.schema.json")
