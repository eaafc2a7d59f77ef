import sys

from forestcount.cli import main

sys.exit(main())
