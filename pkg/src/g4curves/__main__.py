import sys

from g4curves.cli import main

sys.exit(main())
