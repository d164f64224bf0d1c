"""
A small command framework on argparse in the style of discord.ext.commands:
command groups are Cog subclasses, their methods become subcommands through
@command and grow flags through @argument, and extension modules register
their cogs with a `setup(cli)` hook.

Every command receives a RunConfig and returns the tables to emit. Raising
VerificationFailure with the failing tables exits 1, any other HardyError exits 2.
"""

import argparse
import importlib
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from lib.config import DEFAULT_GRID_SIZE, EXACT_TOL, MAX_GRID_SIZE
from lib.errors import DomainError, HardyError, SpecError, VerificationFailure
from lib.kernel import DiskPoint
from lib.logger import logger
from lib.report import Format, Table, render, write
from lib.specs import Spec, load_spec, load_spec_file
from lib.trace import check_radii, default_radii

Argument = Tuple[Tuple[str, ...], Dict[str, Any]]


class Command:
    def __init__(
        self,
        callback: Callable,
        name: str,
        description: str = "",
        aliases: Sequence[str] = (),
        defaults: Optional[Dict[str, Any]] = None,
    ):
        self.callback = callback
        self.name = name
        self.description = description
        self.aliases = list(aliases)
        self.defaults = defaults or {}
        self.arguments: List[Argument] = list(getattr(callback, "__arguments__", []))


def command(
    name: Optional[str] = None,
    description: str = "",
    aliases: Sequence[str] = (),
    defaults: Optional[Dict[str, Any]] = None,
):
    """Marks a cog method as a subcommand. `defaults` override the common flag defaults
    (n, radii, tol, format) for this subcommand only."""

    def decorator(func: Callable) -> Command:
        return Command(func, name or func.__name__.replace("_", "-"), description, aliases, defaults)

    return decorator


def argument(*flags: str, **kwargs: Any):
    """Adds an argparse flag to a subcommand; decorators read top to bottom."""

    def decorator(func):
        if isinstance(func, Command):
            func.arguments.insert(0, (flags, kwargs))
            return func

        func.__arguments__ = [(flags, kwargs), *getattr(func, "__arguments__", [])]
        return func

    return decorator


class Cog:
    description: str = ""

    def __init_subclass__(cls, description: str = "", **kwargs):
        super().__init_subclass__(**kwargs)
        cls.description = description or cls.description

    @classmethod
    def get_commands(cls) -> List[Command]:
        return [value for value in vars(cls).values() if isinstance(value, Command)]


def parse_radii(text: str) -> List[float]:
    """'geometric:<count>' for 1 - 2^{-n}, n = 1..count, or a comma separated list."""
    try:
        if text.startswith("geometric:"):
            return check_radii(default_radii(int(text.split(":", 1)[1])))
        return check_radii([float(r) for r in text.split(",")])
    except (ValueError, DomainError) as err:
        raise argparse.ArgumentTypeError(f"invalid radii {text!r}: {err}")


def parse_point(text: str) -> DiskPoint:
    """'r,sigma' in polar coordinates."""
    try:
        r, sigma = (float(part) for part in text.split(","))
        return DiskPoint(r, sigma)
    except (ValueError, DomainError) as err:
        raise argparse.ArgumentTypeError(f"invalid point {text!r}, expected 'r,sigma' with 0 <= r < 1: {err}")


def parse_ints(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}")


@dataclass
class RunConfig:
    command: str
    n: int
    radii: Optional[List[float]]
    tol: float
    out: Optional[Path]
    format: Format
    spec_texts: List[str]
    spec_files: List[str]
    options: argparse.Namespace

    def __post_init__(self):
        if not 2 <= self.n <= MAX_GRID_SIZE:
            raise DomainError(f"--n must lie in [2, {MAX_GRID_SIZE}], got {self.n}")
        if not math.isfinite(self.tol) or self.tol < 0:
            raise DomainError(f"--tol must be a finite nonnegative number, got {self.tol}")
        if self.spec_texts and self.spec_files:
            raise SpecError("--spec", "give inline specs or spec files, not both")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            args.command,
            args.n,
            args.radii,
            args.tol,
            args.out,
            Format(args.format),
            args.spec or [],
            args.spec_file or [],
            args,
        )

    def specs(self) -> List[Spec]:
        if self.spec_files:
            return [load_spec_file(path) for path in self.spec_files]

        return [load_spec(text) for text in self.spec_texts]

    def spec(self) -> Spec:
        specs = self.specs()
        if len(specs) != 1:
            raise SpecError("--spec", f"{self.command} takes exactly one spec, got {len(specs)}")

        return specs[0]

    def __getattr__(self, name: str) -> Any:
        # Command specific flags
        if name == "options":
            raise AttributeError(name)
        return getattr(self.options, name)


class CommandLine:
    def __init__(self, prog: str = "hardy", description: str = ""):
        self.prog = prog
        self.description = description
        self.cogs: Dict[str, Cog] = {}
        self.commands: Dict[str, Tuple[Cog, Command]] = {}

    def add_cog(self, cog: Cog):
        self.cogs[type(cog).__name__] = cog
        for cmd in cog.get_commands():
            for name in [cmd.name, *cmd.aliases]:
                if name in self.commands:
                    raise ValueError(f"command {name} is already registered")
                self.commands[name] = (cog, cmd)

    def get_cog(self, name: str) -> Optional[Cog]:
        return self.cogs.get(name)

    def load_extension(self, name: str):
        module = importlib.import_module(name)
        if not hasattr(module, "setup"):
            raise ImportError(f"extension {name} has no setup function")
        module.setup(self)

    def _add_common_arguments(self, parser: argparse.ArgumentParser, cmd: Command):
        defaults = cmd.defaults
        parser.add_argument("--n", type=int, default=defaults.get("n", DEFAULT_GRID_SIZE), help="grid size N")
        parser.add_argument(
            "--radii",
            type=parse_radii,
            default=defaults.get("radii"),
            help='increasing radii in (0, 1): comma list or "geometric:<count>"',
        )
        parser.add_argument("--tol", type=float, default=defaults.get("tol", EXACT_TOL), help="pass/fail tolerance")
        parser.add_argument("--out", type=Path, help="write the report here instead of stdout")
        parser.add_argument(
            "--format",
            choices=[f.value for f in Format],
            default=defaults.get("format", Format.PLAIN.value),
            help="report format",
        )
        parser.add_argument("--spec", action="append", metavar="JSON", help="inline function spec (repeatable)")
        parser.add_argument("--spec-file", action="append", metavar="PATH", help="function spec file (repeatable)")

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=self.prog, description=self.description)
        subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")

        seen = set()
        for cog, cmd in self.commands.values():
            if id(cmd) in seen:
                continue
            seen.add(id(cmd))

            subparser = subparsers.add_parser(
                cmd.name,
                aliases=cmd.aliases,
                help=cmd.description,
                description=cmd.description,
                formatter_class=argparse.ArgumentDefaultsHelpFormatter,
            )
            self._add_common_arguments(subparser, cmd)
            for flags, kwargs in cmd.arguments:
                subparser.add_argument(*flags, **kwargs)

        return parser

    def emit(self, tables: Sequence[Table], config: RunConfig, stdout: TextIO):
        if config.out is None:
            stdout.write(render(tables, config.format))
            return

        for path in write(tables, config.format, config.out):
            stdout.write(f"wrote {path}\n")

    def run(self, argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
        """Parses argv, runs the subcommand and emits its tables.

        Returns:
            int: 0 on success, 1 when a verification fails, 2 on usage, spec or domain errors.
        """
        stdout = stdout or sys.stdout
        stderr = stderr or sys.stderr

        try:
            args = self.build_parser().parse_args(list(argv))
        except SystemExit as exit:
            return exit.code if isinstance(exit.code, int) else 2

        cog, cmd = self.commands[args.command]
        logger.info(f"Running {cmd.name}: {list(argv)}")

        try:
            config = RunConfig.from_args(args)
            tables = cmd.callback(cog, config)
        except VerificationFailure as failure:
            logger.warning(f"{cmd.name} failed verification: {failure}")
            self.emit([t for t in failure.reports if isinstance(t, Table)], config, stdout)
            stderr.write(f"verification failed: {failure}\n")
            return 1
        except HardyError as err:
            logger.error(f"{cmd.name}: {err}")
            stderr.write(f"error: {err}\n")
            return 2
        except MemoryError:
            logger.error(f"{cmd.name}: out of memory for {list(argv)}")
            stderr.write("error: input too large for available memory\n")
            return 2

        self.emit(tables, config, stdout)
        return 0
