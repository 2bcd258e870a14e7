import sys

from tenp.cli import main

sys.exit(main())
