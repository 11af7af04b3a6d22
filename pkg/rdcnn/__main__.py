"""Allows ``python -m rdcnn``."""

import sys
from rdcnn._cli import main

sys.exit(main())
