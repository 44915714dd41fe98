import os
import sys

# let the suite run from a fresh checkout without an install
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "src"))
