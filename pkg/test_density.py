import math

import numpy as np
import pytest

from lib.acceptance import two_jump_step
from lib.circle import UnitGridFunction, grid_angles, sample
from lib.density import FitOptions, check_nodes, design_matrix, equiangular_nodes, fit_span, residual_curve
from lib.errors import ConditioningError, DomainError
from lib.kernel import DiskPoint, eval_kernel_at


class TestsFitSpan:
    def test_kernel_in_span(self):
        z = DiskPoint(0.5, 1.0)
        target = UnitGridFunction(eval_kernel_at(z, grid_angles(256)))
        result = fit_span(target, [z])
        assert result.converged
        assert result.residual_l1 <= 1e-10
        assert abs(result.coefficients[0] - 1) <= 1e-9

    def test_constant(self):
        result = fit_span(UnitGridFunction(np.ones(128)), [DiskPoint(0, 0)])
        assert result.residual_l1 <= 1e-13
        assert result.coefficients[0] == pytest.approx(1)

    def test_more_nodes_fit_a_step_better(self):
        target = sample(two_jump_step(), 1024)
        coarse = fit_span(target, equiangular_nodes(8, 0.9))
        fine = fit_span(target, equiangular_nodes(32, 0.9))
        assert fine.residual_l1 < coarse.residual_l1
        assert fine.diagnostics["nodes"] == 32

    def test_real_coefficients(self):
        target = UnitGridFunction(2 * np.cos(grid_angles(256)))
        result = fit_span(target, equiangular_nodes(4, 0.8), FitOptions(real=True))
        assert result.coefficients.dtype == float

    def test_scale_equivariance(self):
        target = sample(two_jump_step(), 512)
        nodes = equiangular_nodes(8, 0.8)
        base = fit_span(target, nodes)
        scaled = fit_span(target * 3, nodes)
        assert scaled.residual_l1 == pytest.approx(3 * base.residual_l1, rel=1e-4)

    def test_iteration_cap_reports_no_convergence(self):
        target = sample(two_jump_step(), 256)
        result = fit_span(target, equiangular_nodes(4, 0.5), FitOptions(max_iter=1))
        assert not result.converged
        assert result.iterations == 1
        assert math.isfinite(result.diagnostics["condition"])


class TestsNodes:
    def test_equiangular(self):
        nodes = equiangular_nodes(4, 0.5)
        assert [z.r for z in nodes] == [0.5] * 4
        assert [z.sigma for z in nodes] == pytest.approx([math.pi, -math.pi / 2, 0, math.pi / 2])
        assert len(equiangular_nodes(1, 0.3)) == 1

        with pytest.raises(DomainError):
            equiangular_nodes(0, 0.5)

    @pytest.mark.parametrize(
        "nodes",
        [
            [DiskPoint(0.5, 1.0), DiskPoint(0.5, 1.0)],
            [DiskPoint(0, 0), DiskPoint(0, 2.0)],
            [DiskPoint(0.9, 0), DiskPoint(0.9, 1e-4)],
        ],
    )
    def test_coincident_nodes(self, nodes):
        with pytest.raises(ConditioningError):
            check_nodes(nodes, 256)
        with pytest.raises(ConditioningError):
            fit_span(UnitGridFunction(np.ones(256)), nodes)

    def test_needs_a_node(self):
        with pytest.raises(DomainError):
            check_nodes([], 64)

    def test_design_matrix(self):
        A = design_matrix(equiangular_nodes(3, 0.4), 64)
        assert A.shape == (64, 3)
        # Every column is a kernel with mean 1
        assert np.mean(A, axis=0) == pytest.approx([1, 1, 1])


class TestsResidualCurve:
    def test_nested_counts_do_not_increase(self):
        target = UnitGridFunction(2 * np.cos(grid_angles(256)))
        curve = residual_curve(target, [1, 2, 4], 0.8)
        assert all(b <= a + 1e-6 for a, b in zip(curve, curve[1:]))

    def test_zero_target(self):
        assert residual_curve(UnitGridFunction(np.zeros(64)), [1, 2, 4], 0.5) == [0, 0, 0]

    @pytest.mark.parametrize("counts", [[], [2, 2], [4, 2], [0, 1]])
    def test_counts_validation(self, counts):
        with pytest.raises(DomainError):
            residual_curve(UnitGridFunction(np.ones(64)), counts, 0.5)

    def test_radius_validation(self):
        with pytest.raises(DomainError):
            residual_curve(UnitGridFunction(np.ones(64)), [1, 2], 1.0)

    def test_unnested_counts_warn(self, caplog):
        residual_curve(UnitGridFunction(np.ones(64)), [2, 3], 0.5)
        assert "not nested" in caplog.text
