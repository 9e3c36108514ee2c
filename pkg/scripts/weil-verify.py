#!/usr/bin/env python3
"""
Exact verifier for the jet-valued oscillator representation

Runs one verification suite and prints its JSON report, or emits an
operator matrix on jet coefficients.

Usage:
    python scripts/weil-verify.py verify fourier --jet-order 2 --s0 1
    python scripts/weil-verify.py verify kashiwara --random --dim 2 --seed 7
    python scripts/weil-verify.py --summary report.md verify cocycle --n 1 --samples 20
    python scripts/weil-verify.py emit matrix --op S --jet-order 2 --s0 1
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from jetweil.cli import main

if __name__ == "__main__":
    sys.exit(main())
