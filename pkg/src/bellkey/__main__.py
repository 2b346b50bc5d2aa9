import sys

from bellkey.cli import main

sys.exit(main())
