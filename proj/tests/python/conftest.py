import os
import sys

path = os.environ.get("KRLIP_PYTHON_PATH")
if path:
    sys.path.insert(0, path)
