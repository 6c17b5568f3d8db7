import sys

from swarmtrack.cli import main

sys.exit(main())
