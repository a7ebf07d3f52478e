import sys

from tiltfactor.cli import main

sys.exit(main())
