import sys

from sparse_ddm.cli import main

sys.exit(main())
