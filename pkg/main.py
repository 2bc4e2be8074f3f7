import sys
from typing import Optional
from src.cli import run
from src.config import config
from src.utils import logger


def main(argv: Optional[list[str]] = None) -> None:
    logger.debug("Starting coherent-backscatter", output_dir=str(config.output_dir), workers=config.workers)
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
