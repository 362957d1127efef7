import sys

from pqft.cli import main

sys.exit(main())
