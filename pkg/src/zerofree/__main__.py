import sys

from zerofree.cli import main

sys.exit(main())
