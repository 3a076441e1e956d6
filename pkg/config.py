from dotenv import load_dotenv
import os

# Load environment variables from .env
load_dotenv()

VERSION = "0.1.0"

LOG_LEVEL = os.getenv("HIERCORE_LOG_LEVEL", "INFO")

# Sampler defaults are desk-scale; long production runs override --steps
DEFAULT_STEPS = int(os.getenv("HIERCORE_DEFAULT_STEPS", "10000000"))

# Worker threads used by --chains
CHAIN_WORKERS = int(os.getenv("HIERCORE_CHAIN_WORKERS", "2"))

# Steps between progress cache updates
PROGRESS_INTERVAL = int(os.getenv("HIERCORE_PROGRESS_INTERVAL", "100000"))

# 0 disables the recompute_stats cross-check
INVARIANT_CHECK_INTERVAL = int(os.getenv("HIERCORE_INVARIANT_CHECK_INTERVAL", "0"))
DEBUG_CHECK_INTERVAL = 100000
