import sys

from ginbetti.cli import main

sys.exit(main())
