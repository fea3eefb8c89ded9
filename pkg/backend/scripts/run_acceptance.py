'''
Runs every verification suite at its acceptance bounds and writes the
reports to backend/data/acceptance.json.
    python -m backend.scripts.run_acceptance
'''
import os
import sys
import json
import time
import logging
from dotenv import load_dotenv
load_dotenv(override=True)

from backend.src.config import get_settings
from backend.src.services.sweeps import run_suite

#Setup logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(message)s"
    )
logger = logging.getLogger("acceptance")

# suite -> (max_m, max_k)
ACCEPTANCE_BOUNDS = {
    "ring": (1, 0),
    "qpoch": (5, 4),
    "gf": (3, 0),
    "lgv": (4, 2),
    "prop1": (5, 4),
    "dodgson": (5, 2),
    "submatrix": (5, 3),
    "recursion": (5, 3),
    "krat": (6, 2),
    "endtoend": (4, 2),
}


def run_acceptance() -> int:
    settings = get_settings()
    current_dir = os.path.dirname(os.path.abspath(__file__))
    out_path = os.path.join(current_dir, "../../backend/data/acceptance.json")

    logger.info("="*60)
    logger.info("Configuration Check: ")
    logger.info(f"QHEX_CAP: {settings.enumeration_cap}")
    logger.info(f"QHEX_SEED: {settings.seed}")
    logger.info(f"QHEX_WORKERS: {settings.workers}")
    logger.info(f"QHEX_COFACTOR_LIMIT: {settings.cofactor_limit}")
    logger.info("="*60)

    reports = []
    failed = []
    for suite, (max_m, max_k) in ACCEPTANCE_BOUNDS.items():
        logger.info(f"Running suite {suite} (max_m={max_m}, max_k={max_k})...")
        started = time.perf_counter()
        try:
            report = run_suite(suite, max_m=max_m, max_k=max_k)
        except Exception as e:
            logger.error(f"Suite {suite} crashed: {e}")
            failed.append(suite)
            continue
        elapsed = time.perf_counter() - started
        logger.info(f"Suite {suite}: {report.passed}/{report.cases} passed, {report.skipped} skipped in {elapsed:.1f}s")
        if not report.ok:
            logger.error(f"First failure: {report.first_failure}")
            failed.append(suite)
        reports.append(report.model_dump())

    os.makedirs(os.path.dirname(out_path), exist_ok=True)
    with open(out_path, "w", encoding="utf-8") as f:
        json.dump(reports, f, indent=2)

    logger.info("="*60)
    if failed:
        logger.error(f"Failing suites: {failed}")
        return 1
    logger.info(f"All {len(reports)} suites passed. Reports saved to {out_path}")
    logger.info("="*60)
    return 0


if __name__ == "__main__":
    sys.exit(run_acceptance())
