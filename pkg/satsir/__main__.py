"""python -m satsir dispatch."""
import sys

from satsir.cli import main

sys.exit(main())
