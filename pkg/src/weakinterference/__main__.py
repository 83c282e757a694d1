import sys

from weakinterference.cli import main

sys.exit(main())
