from lib.commands import CommandLine, Cog, RunConfig, argument, command, parse_ints, parse_point
from lib.config import IRLS_MAX_ITER
from lib.density import FitOptions, equiangular_nodes, fit_span, residual_curve
from lib.errors import VerificationFailure
from lib.report import Table, complex_columns
from lib.specs import boundary_samples


class Density(Cog, description="L1 fits by finite spans of Poisson kernels"):
    def __init__(self, cli: CommandLine):
        self.cli = cli

    @command(
        name="density-fit",
        description="Fit a boundary function by sum_j w_j P_{z_j} in the grid L1 norm (IRLS); "
        "convergence is reported in the summary table",
        defaults={"n": 4096},
    )
    @argument("--nodes", type=int, default=32, help="number of equiangular nodes at --r-node")
    @argument("--r-node", type=float, default=0.9, help="radius of the equiangular nodes")
    @argument("--node", type=parse_point, action="append", help="explicit node 'r,sigma' (repeatable)")
    @argument("--node-counts", type=parse_ints, help="comma list of node counts for a residual curve at --r-node")
    @argument("--real", action="store_true", help="restrict to real coefficients")
    @argument("--max-iter", type=int, default=IRLS_MAX_ITER, help="IRLS iteration cap")
    @argument("--require-convergence", action="store_true", help="exit 1 when IRLS stops at the iteration cap")
    def density_fit(self, ctx: RunConfig):
        target = boundary_samples(ctx.spec(), ctx.n)
        opts = FitOptions(max_iter=ctx.max_iter, real=ctx.real)
        nodes = ctx.node or equiangular_nodes(ctx.nodes, ctx.r_node)

        result = fit_span(target, nodes, opts)

        fit = Table("fit", ["node", "r", "sigma", *complex_columns("coefficient")])
        for index, (z, w) in enumerate(zip(result.nodes, result.coefficients)):
            fit.add_complex_row(index, z.r, z.sigma, complex(w))

        summary = Table("summary", ["residual_l1", "iterations", "converged", "condition"])
        summary.add_row(result.residual_l1, result.iterations, result.converged, result.diagnostics["condition"])

        tables = [fit, summary]
        if ctx.node_counts:
            curve = Table("curve", ["nodes", "residual_l1"])
            for count, residual in zip(ctx.node_counts, residual_curve(target, ctx.node_counts, ctx.r_node, opts)):
                curve.add_row(count, residual)
            tables.append(curve)

        if ctx.require_convergence and not result.converged:
            raise VerificationFailure(f"IRLS did not converge: {result.diagnostics}", tables)

        return tables


def setup(cli: CommandLine):
    cli.add_cog(Density(cli))
