"""Make the sibling `oracles` helper importable regardless of pytest's
import mode."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
