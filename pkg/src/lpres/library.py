"""
The example groups shipped with the package.
"""
import os
from typing import List

from .frontend.parsing import PresentationFile, load_presentation

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def available_examples() -> List[str]:
    return sorted(name[:-3] for name in os.listdir(DATA_DIR) if name.endswith(".lp"))


def example_path(name: str) -> str:
    """
    Raises:
        KeyError: If no example has that name.
    """
    if name not in available_examples():
        raise KeyError(f"No example named '{name}' (available: {', '.join(available_examples())})")
    return os.path.join(DATA_DIR, f"{name}.lp")


def load_example(name: str) -> PresentationFile:
    """Parse a shipped example, e.g. load_example("basilica")."""
    return load_presentation(example_path(name))
