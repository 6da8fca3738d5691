"""Regenerate src/kirchlab/_tables.py from the doubling recursion."""
from pathlib import Path

from kirchlab.algebra import render_frozen_tables

target = Path(__file__).resolve().parents[1] / "src" / "kirchlab" / "_tables.py"
target.write_text(render_frozen_tables())
print(f"wrote {target}")
