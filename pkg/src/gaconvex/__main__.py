import sys

from gaconvex.cli import main

sys.exit(main())
