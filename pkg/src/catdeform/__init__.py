"""Exact deformation cohomology of skeletal tensor and bitensor categories."""
from pathlib import Path

__version__ = "0.1.0"

DATA = Path(__file__).resolve().parent / "data"


def data_path(name):
    """Path of a bundled data file (``.json`` is added when missing)."""
    return DATA / (name if name.endswith(".json") else name + ".json")
