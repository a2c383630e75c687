import sys

from conecollapse.cli import main

sys.exit(main())
