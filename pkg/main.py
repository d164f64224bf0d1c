import sys
from typing import Sequence

from lib.commands import CommandLine
from lib.config import COG_EXTENSIONS
from lib.logger import logger


class Cli(CommandLine):
    def run(self, argv: Sequence[str], stdout=None, stderr=None) -> int:
        status = super().run(argv, stdout, stderr)
        logger.info(f"Exit status {status}")
        return status


def load_cli(cli: Cli) -> Cli:
    for extension in COG_EXTENSIONS:
        cli.load_extension(f"cogs.{extension.strip()}")

    return cli


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    cli = load_cli(
        Cli(
            prog="hardy",
            description="Poisson extensions, boundary traces and their verification on the unit disk",
        )
    )
    return cli.run(argv, stdout, stderr)


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
