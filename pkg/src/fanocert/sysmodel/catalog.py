"""Access to the shipped data files.

The data directory defaults to the package's ``data`` folder and can be
overridden with the ``FANOCERT_DATA`` environment variable (useful for
mutation tests and for auditing a modified catalog).
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from ..errors import UnknownSystem
from .dsl import parse_system
from .model import ParametricSystem

DATA_ENV = "FANOCERT_DATA"


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent.parent / "data"


def system_path(name: str) -> Path:
    return data_dir() / "systems" / f"{name}.sys"


def catalog_names() -> list[str]:
    folder = data_dir() / "systems"
    return sorted(p.stem for p in folder.glob("*.sys"))


@lru_cache(maxsize=None)
def _load(path: str, mtime: float) -> ParametricSystem:
    text = Path(path).read_text()
    return parse_system(text, name=Path(path).stem)


def load_system(name: str) -> ParametricSystem:
    path = system_path(name)
    if not path.is_file():
        raise UnknownSystem(name)
    return _load(str(path), path.stat().st_mtime)
