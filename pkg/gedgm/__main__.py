import sys

from gedgm.main import main

sys.exit(main())
