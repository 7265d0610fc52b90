import sys
from pathlib import Path

from hypothesis import settings

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")
