"""Main entry point for the real motivic engine: CLI by default, MCP server with 'serve'."""

import asyncio
import logging
import sys

from src.real_motivic.cli import main as cli_main
from src.real_motivic.server import main as server_main

logger = logging.getLogger(__name__)


if __name__ == "__main__":
    if sys.argv[1:2] == ["serve"]:
        try:
            asyncio.run(server_main())
        except KeyboardInterrupt:
            logger.info("Server interrupted by user")
    else:
        sys.exit(cli_main())
