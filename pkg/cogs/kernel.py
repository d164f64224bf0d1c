from lib.commands import CommandLine, Cog, RunConfig, argument, command
from lib.errors import VerificationFailure
from lib.kernel import decay_table, verify_kernel_properties
from lib.report import Table


class Kernel(Cog, description="Poisson kernel checks"):
    def __init__(self, cli: CommandLine):
        self.cli = cli

    @command(
        name="kernel-verify",
        description="Check properties i-v of P_r on the grid; --radii adds a property-v decay table",
        defaults={"tol": 1e-12},
    )
    @argument("--r", type=float, default=0.5, help="kernel radius in [0, 1)")
    @argument("--delta", type=float, default=0.5, help="cut-off angle for property v, in (0, pi)")
    def kernel_verify(self, ctx: RunConfig):
        reports = verify_kernel_properties(ctx.r, ctx.delta, ctx.n, ctx.tol)

        properties = Table("properties", ["property", "max_violation", "tol", "passed", "value"])
        for report in reports:
            properties.add_row(
                report.property_id.value, report.max_violation, report.metadata["tol"], report.passed, report.value
            )

        tables = [properties]
        if ctx.radii:
            decay = Table("decay", ["r", "sup_tail"])
            for r, value in decay_table(ctx.radii, ctx.delta, ctx.n):
                decay.add_row(r, value)
            tables.append(decay)

        failed = [report.property_id.value for report in reports if not report.passed]
        if failed:
            raise VerificationFailure(f"kernel properties {', '.join(failed)} fail at r={ctx.r}", tables)

        return tables


def setup(cli: CommandLine):
    cli.add_cog(Kernel(cli))
