#!/usr/bin/env python3
"""
Barrido en temperatura (equivale a `run_all.py sweep`).
"""

import sys
from pathlib import Path

# Añadir el directorio raíz al path
sys.path.insert(0, str(Path(__file__).parent.parent))

from scripts.run_all import main

if __name__ == "__main__":
    sys.exit(main(["sweep", *sys.argv[1:]]))
