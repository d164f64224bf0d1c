from lib.acceptance import run_criteria
from lib.commands import CommandLine, Cog, RunConfig, argument, command, parse_ints
from lib.config import SEED
from lib.errors import VerificationFailure
from lib.report import Table


class Selftest(Cog, description="Acceptance suite"):
    def __init__(self, cli: CommandLine):
        self.cli = cli

    @command(description="Run the numbered acceptance criteria (all by default)")
    @argument("--criteria", type=parse_ints, help="comma list of criterion numbers to run")
    @argument("--seed", type=int, default=SEED, help="seed of the random test inputs")
    def selftest(self, ctx: RunConfig):
        results = run_criteria(ctx.criteria, ctx.seed)

        criteria = Table("criteria", ["criterion", "name", "passed", "detail"])
        for result in results:
            criteria.add_row(result.number, result.name, result.passed, result.detail)

        failed = [result for result in results if not result.passed]
        summary = Table("summary", ["total", "passed", "failed"])
        summary.add_row(len(results), len(results) - len(failed), len(failed))

        if failed:
            names = ", ".join(f"{result.number} ({result.name})" for result in failed)
            raise VerificationFailure(f"criteria failed: {names}", [criteria, summary])

        return [criteria, summary]


def setup(cli: CommandLine):
    cli.add_cog(Selftest(cli))
