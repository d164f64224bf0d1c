from lib.acceptance import homomorphism_catalogue
from lib.circle import SpectralFunction
from lib.commands import CommandLine, Cog, RunConfig, argument, command
from lib.errors import SpecError, UnsupportedVariantError, VerificationFailure
from lib.extend import HoloSpec
from lib.report import Table, complex_columns
from lib.specs import boundary_samples
from lib.trace import (
    approx_identity_curve,
    closed_form_product,
    isometry_report,
    product_trace_residual,
    radial_trace,
    surjectivity_roundtrip,
    weakstar_residual,
)


class Boundary(Cog, description="Boundary traces and their properties"):
    def __init__(self, cli: CommandLine):
        self.cli = cli

    @command(
        description="Radial trace of a holomorphic or trig spec with its isometry report",
        defaults={"radii": "geometric:14", "tol": 1e-9},
    )
    @argument("--extrapolate", action="store_true", help="extrapolate the last two dilates linearly in 1 - r")
    @argument("--samples", action="store_true", help="also emit the trace samples")
    def trace(self, ctx: RunConfig):
        f = ctx.spec()
        if not isinstance(f, (HoloSpec, SpectralFunction)):
            raise UnsupportedVariantError("trace needs a holomorphic or trig spec")

        try:
            result = radial_trace(f, ctx.radii, ctx.n, ctx.extrapolate)
        except VerificationFailure as failure:
            sup_norms = Table("dilates", ["radius", "sup_norm"])
            for r, sup in zip(ctx.radii, *failure.reports):
                sup_norms.add_row(r, sup)
            raise VerificationFailure(str(failure), [sup_norms])

        dilates = Table("dilates", ["radius", "cauchy_gap", "sup_norm"])
        for r, gap, sup in zip(result.radii, [None, *result.cauchy_gaps], result.sup_norms):
            dilates.add_row(r, gap, sup)

        report = isometry_report(f, result.trace, tol=ctx.tol)
        isometry = Table("isometry", ["r_max", "sup_disk", "sup_circle", "gap", "passed"])
        isometry.add_row(report.metadata["r_max"], report.sup_disk, report.sup_circle, report.gap, report.passed)

        tables = [dilates, isometry]
        passed = report.passed

        if isinstance(f, HoloSpec):
            weakstar = Table("weakstar", ["residual"])
            weakstar.add_row(weakstar_residual(f, result.trace))
            tables.append(weakstar)
        else:
            roundtrip = surjectivity_roundtrip(f, result.radii[-1], ctx.n)
            table = Table("roundtrip", ["r", "error", "bound", "passed"])
            table.add_row(roundtrip.metadata["r"], roundtrip.error, roundtrip.bound, roundtrip.passed)
            tables.append(table)
            passed = passed and roundtrip.passed

        if ctx.samples:
            samples = Table("samples", ["t", *complex_columns("value")])
            for t, value in zip(result.trace.angles, result.trace.samples):
                samples.add_complex_row(t, value)
            tables.append(samples)

        if not passed:
            raise VerificationFailure("trace checks failed", tables)

        return tables

    @command(
        description="Trace multiplicativity (fg)* = f* g* for two specs, or a built-in catalogue of 20 pairs",
        defaults={"n": 1024, "tol": 1e-12},
    )
    def homomorphism(self, ctx: RunConfig):
        specs = ctx.specs()
        if not specs:
            pairs = homomorphism_catalogue()
        elif len(specs) == 2:
            pairs = [(specs[0], specs[1])]
        else:
            raise SpecError("--spec", f"homomorphism takes two specs or none, got {len(specs)}")

        table = Table("products", ["pair", "f", "g", "closed_form", "residual", "passed"])
        failed = 0
        for index, (f, g) in enumerate(pairs):
            if not isinstance(f, HoloSpec) or not isinstance(g, HoloSpec):
                raise UnsupportedVariantError("homomorphism needs holomorphic specs")

            residual = product_trace_residual(f, g, ctx.n)
            failed += residual > ctx.tol
            table.add_row(
                index,
                type(f).__name__.lower(),
                type(g).__name__.lower(),
                closed_form_product(f, g),
                residual,
                residual <= ctx.tol,
            )

        if failed:
            raise VerificationFailure(f"{failed} pair(s) above {ctx.tol}", [table])

        return [table]

    @command(
        name="approx-identity",
        description="L1 error of P_r * g against g along increasing radii (spectral path)",
        defaults={"radii": "0.5,0.9,0.99,0.999", "tol": 1e-12},
    )
    def approx_identity(self, ctx: RunConfig):
        g = boundary_samples(ctx.spec(), ctx.n)
        curve = approx_identity_curve(g, ctx.radii)

        table = Table("approx_identity", ["r", "l1_error", "non_increasing"])
        failed = 0
        for index, (r, error) in enumerate(zip(ctx.radii, curve)):
            ok = index == 0 or error <= curve[index - 1] + ctx.tol
            failed += not ok
            table.add_row(r, error, ok)

        if failed:
            raise VerificationFailure("approximation error grows with r", [table])

        return [table]


def setup(cli: CommandLine):
    cli.add_cog(Boundary(cli))
