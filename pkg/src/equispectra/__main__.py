"""
Allows running the command line interface as ``python -m equispectra``.
"""

import sys

from .cli import main


sys.exit(main())
