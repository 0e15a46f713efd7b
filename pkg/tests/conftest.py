import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

settings.register_profile("exact", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("exact")
