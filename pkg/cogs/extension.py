from typing import List, Optional

from lib.circle import BoundarySpec, Method, SpectralFunction, sample, synthesize
from lib.commands import CommandLine, Cog, RunConfig, argument, command, parse_point
from lib.errors import SpecError, UnsupportedVariantError, VerificationFailure
from lib.extend import (
    BidiskSpectrum,
    HoloSpec,
    bidisk_extend,
    bidisk_quadrature,
    check_harmonic,
    poisson_extend,
    polar_points,
    reproduce_interior,
)
from lib.kernel import DiskPoint
from lib.report import Table, complex_columns
from lib.specs import as_boundary
from lib.trace import default_testpoints


def interior_points(points: Optional[List[DiskPoint]], radii: Optional[List[float]], angles: int) -> List[DiskPoint]:
    """Explicit --z points, else the polar grid radii x angles, else the default test points."""
    if points:
        return points
    if radii:
        return polar_points(radii, angles)

    return default_testpoints()


class Extension(Cog, description="Poisson extension into the disk and bidisk"):
    def __init__(self, cli: CommandLine):
        self.cli = cli

    @command(description="Poisson extension of boundary data at interior points", defaults={"tol": 1e-9})
    @argument("--z", type=parse_point, action="append", help="interior point 'r,sigma' (repeatable)")
    @argument("--angles", type=int, default=8, help="angles per radius when points come from --radii")
    @argument(
        "--method",
        choices=[m.value for m in Method],
        default=Method.SPECTRAL.value,
        help="trig specs only: Horner sum of the spectrum, or trapezoid rule on N samples",
    )
    @argument("--mean-value", type=float, help="also report the mean-value residual on circles of this radius")
    def extend(self, ctx: RunConfig):
        boundary = as_boundary(ctx.spec())
        if isinstance(boundary, SpectralFunction) and Method(ctx.method) is Method.QUADRATURE:
            data = synthesize(boundary, ctx.n)
        elif isinstance(boundary, BoundarySpec):
            data = sample(boundary, ctx.n)
        else:
            data = boundary

        if ctx.mean_value is not None and not isinstance(boundary, SpectralFunction):
            raise UnsupportedVariantError("--mean-value needs a trig spec")

        points = interior_points(ctx.z, ctx.radii, ctx.angles)
        columns = ["r", "sigma", *complex_columns("value")]
        table = Table("extension", columns + (["mean_value_residual", "passed"] if ctx.mean_value is not None else []))

        failed = []
        for z in points:
            value = poisson_extend(data, z)
            if ctx.mean_value is None:
                table.add_complex_row(z.r, z.sigma, value)
                continue

            residual = check_harmonic(boundary, z, ctx.mean_value)
            table.add_complex_row(z.r, z.sigma, value, residual, residual <= ctx.tol)
            if residual > ctx.tol:
                failed.append(z)

        if failed:
            raise VerificationFailure(f"mean-value residual above {ctx.tol} at {len(failed)} point(s)", [table])

        return [table]

    @command(description="Reproduce a holomorphic spec from its (dilated) boundary values", defaults={"tol": 1e-9})
    @argument("--z", type=parse_point, action="append", help="interior point 'r,sigma' (repeatable)")
    @argument("--angles", type=int, default=8, help="angles per radius when points come from --radii")
    @argument("--rho", type=float, default=1.0, help="dilation in (|z|, 1], below 1 for non closed-disk specs")
    def reproduce(self, ctx: RunConfig):
        f = ctx.spec()
        if not isinstance(f, HoloSpec):
            raise SpecError("type", "reproduce needs a holomorphic spec (taylor, blaschke, scaled, product, singular)")

        table = Table(
            "reproduction",
            ["r", "sigma", "rho", *complex_columns("exact"), *complex_columns("integral"), "residual", "passed"],
        )
        failed = 0
        for z in interior_points(ctx.z, ctx.radii, ctx.angles):
            result = reproduce_interior(f, z, ctx.rho, ctx.n)
            passed = result.residual <= ctx.tol
            failed += not passed
            table.add_complex_row(z.r, z.sigma, ctx.rho, result.exact, result.integral, result.residual, passed)

        if failed:
            raise VerificationFailure(f"reproduction residual above {ctx.tol} at {failed} point(s)", [table])

        return [table]

    @command(
        description="Tensor-product Poisson extension of a trig2d spec on the bidisk",
        defaults={"n": 256, "tol": 1e-8},
    )
    @argument("--z1", type=parse_point, action="append", help="first coordinate 'r,sigma' (repeatable)")
    @argument("--z2", type=parse_point, action="append", help="second coordinate 'r,sigma', paired with --z1")
    @argument("--quadrature-check", action="store_true", help="cross-check against the N x N torus quadrature")
    def bidisk(self, ctx: RunConfig):
        spec = ctx.spec()
        if not isinstance(spec, BidiskSpectrum):
            raise SpecError("type", "bidisk needs a trig2d spec")

        first = ctx.z1 or [DiskPoint(0.5)]
        second = ctx.z2 or [DiskPoint(0.5)]
        if len(first) != len(second):
            raise SpecError("--z2", f"got {len(first)} --z1 points but {len(second)} --z2 points")

        columns = ["r1", "sigma1", "r2", "sigma2", *complex_columns("value")]
        if ctx.quadrature_check:
            columns += [*complex_columns("quadrature"), "gap", "passed"]
        table = Table("bidisk", columns)

        failed = 0
        for z1, z2 in zip(first, second):
            value = bidisk_extend(spec, z1, z2)
            if not ctx.quadrature_check:
                table.add_complex_row(z1.r, z1.sigma, z2.r, z2.sigma, value)
                continue

            quadrature = bidisk_quadrature(spec, z1, z2, ctx.n, ctx.n)
            gap = abs(quadrature - value)
            failed += gap > ctx.tol
            table.add_complex_row(z1.r, z1.sigma, z2.r, z2.sigma, value, quadrature, gap, gap <= ctx.tol)

        if failed:
            raise VerificationFailure(f"bidisk quadrature gap above {ctx.tol} at {failed} pair(s)", [table])

        return [table]


def setup(cli: CommandLine):
    cli.add_cog(Extension(cli))
