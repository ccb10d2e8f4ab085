import sys

from ktreepart.cli import main

sys.exit(main())
