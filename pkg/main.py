import logging
import sys

from constants import EXIT_INPUT_ERROR

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def main(argv=None) -> int:
    try:
        from idcodes.cli import run
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_INPUT_ERROR
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
