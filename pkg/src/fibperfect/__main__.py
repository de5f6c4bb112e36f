import sys

from fibperfect.cli import main

sys.exit(main())
