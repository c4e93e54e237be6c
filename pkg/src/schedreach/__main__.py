"""Run the command line with ``python -m schedreach``."""

import sys

from .cli import main

sys.exit(main())
