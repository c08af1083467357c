import warnings

import numpy as np
import pytest

from kernelsig import KernelSpec, SignatureModel, estimate_local_dimension, gen_extruded_surface, gen_folded_curve
from kernelsig.bench import DIMENSION_DELTA, folded_base_points
from kernelsig.dimension import numerical_rank
from kernelsig.errors import IllConditionedWarning, InsufficientProbes


@pytest.fixture(scope="module")
def line2d():
    x = np.linspace(-1, 1, 50)
    warnings.simplefilter("ignore", IllConditionedWarning)
    return SignatureModel.fit(np.c_[x, 0.5 * x], KernelSpec.gauss(), 0.0)


@pytest.fixture(scope="module")
def folded():
    spec = KernelSpec.gauss(DIMENSION_DELTA)
    return (SignatureModel.fit(gen_folded_curve(54), spec),
            SignatureModel.fit(gen_extruded_surface(54, 7), spec))


def test_straight_line_is_one_dimensional(line2d):
    for p in line2d.cloud.points[20:30:3]:
        est = estimate_local_dimension(line2d, p, seed=4)
        assert est.estimated_dimension == 1
        assert est.numerical_rank == 1


def test_result_invariants(line2d):
    est = estimate_local_dimension(line2d, line2d.cloud.points[25], probes=9, seed=0)
    s = est.singular_values
    assert s.shape == (2,)
    assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
    assert s[0] <= np.sqrt(9) + 1e-12
    assert 0 <= est.numerical_rank <= 2
    assert est.estimated_dimension == 2 - est.numerical_rank
    assert est.normals.shape == (2, 9)
    np.testing.assert_allclose(np.linalg.norm(est.normals, axis=0), 1.0, atol=1e-12)


def test_deterministic(folded):
    curve, _ = folded
    p = folded_base_points(curve.cloud)[0]
    a = estimate_local_dimension(curve, p, seed=11)
    b = estimate_local_dimension(curve, p, seed=11)
    np.testing.assert_array_equal(a.singular_values, b.singular_values)
    assert a.estimated_dimension == b.estimated_dimension


def test_folded_curve_and_surface(folded):
    curve, surface = folded
    for p in folded_base_points(curve.cloud):
        ec = estimate_local_dimension(curve, p, seed=0)
        es = estimate_local_dimension(surface, p, seed=0)
        assert ec.estimated_dimension == 1, ec.singular_values
        assert es.estimated_dimension == 2, es.singular_values


def test_numerical_rank_threshold():
    assert numerical_rank([3.0, 0.31, 0.29], 0.1) == 2
    assert numerical_rank([3.0, 0.31, 0.0], 0.1) == 2
    assert numerical_rank([0.0, 0.0], 0.1) == 0


def test_insufficient_probes(folded):
    curve, _ = folded
    with pytest.raises(InsufficientProbes):
        estimate_local_dimension(curve, curve.cloud.points[0], probes=2)


def test_radius_must_be_positive(line2d):
    with pytest.raises(ValueError):
        estimate_local_dimension(line2d, [0.0, 0.0], radius=0.0)
