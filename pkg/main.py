'''
Main execution entry point for the quartered-hexagon toolkit.
Loads the environment, configures logging once for the whole process and
hands the command line over to backend.src.api.cli.
    python main.py region 2 0 0,1 --all
    python main.py verify endtoend --max-m 3 --max-k 2
'''
import os
import sys
import logging

# Load env variables from .env file (QHEX_CAP, QHEX_SEED, QHEX_WORKERS, ...)
from dotenv import load_dotenv
load_dotenv(override=True)

from backend.src.api.cli import main

logging.basicConfig(
    level=os.getenv("QHEX_LOG_LEVEL", "INFO").upper(),
    format="%(asctime)s [%(levelname)s] %(message)s",
    # logs go to stderr so stdout stays machine readable JSON / SVG
    stream=sys.stderr,
)
logger = logging.getLogger("qhex_runner")


def run() -> int:
    logger.info(f"Command: {' '.join(sys.argv[1:]) or '(none)'}")
    try:
        return main(sys.argv[1:])
    except Exception as e:
        logger.error(f"Command failed: {str(e)}")
        raise e


if __name__ == "__main__":
    sys.exit(run())
