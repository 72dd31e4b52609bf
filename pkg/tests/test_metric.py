import math
from fractions import Fraction

import pytest
from conftest import K23_MATRIX, k23, path

from metricsplit.metric import (
    DistanceMatrix,
    MetricFormatError,
    PointSet,
    distance_matrix,
    lp_point_metric,
    parse_metric,
    principal_submatrix,
    validate_semimetric,
)


def test_k23_distance_matrix_exact():
    assert distance_matrix(k23()).d == K23_MATRIX


def test_p3_distances():
    assert distance_matrix(path(3)).d == ((0, 1, 2), (1, 0, 1), (2, 1, 0))


def test_zero_weight_edge_gives_zero_distance():
    d = distance_matrix(path(3, [1, 0]))
    assert d.d == ((0, 1, 1), (1, 0, 0), (1, 0, 0))


def test_fractional_weights_exact():
    d = distance_matrix(path(3, [Fraction(1, 3), Fraction(1, 6)]))
    assert d[0, 2] == Fraction(1, 2)
    assert all(isinstance(x, Fraction) for row in d.d for x in row)


def test_validate_pass():
    assert validate_semimetric([[0, 1], [1, 0]]).ok
    assert validate_semimetric([[0] * 3 for _ in range(3)]).ok


def test_validate_triangle_failure_located():
    report = validate_semimetric([[0, 5, 1], [5, 0, 1], [1, 1, 0]])
    assert not report.ok
    assert report.failed() == ["triangle"]
    assert report.failures[0].startswith("triangle: d[1,2] = 5 > d[1,3] + d[3,2]")


def test_validate_other_failures():
    report = validate_semimetric([[1, 1], [2, 0]])
    assert set(report.failed()) >= {"hollow", "symmetric"}
    assert "nonnegative" in validate_semimetric([[0, -1], [-1, 0]]).failed()


def test_distance_matrix_rejects_bad_input():
    with pytest.raises(MetricFormatError):
        DistanceMatrix(((0, 1), (2, 0)))


def test_principal_submatrix():
    m = distance_matrix(k23())
    sub = principal_submatrix(m, [1, 2, 4, 5])
    assert sub.n == 4 and validate_semimetric(sub).ok
    assert principal_submatrix(m, range(1, 6)) == m
    assert principal_submatrix(m, [3]).d == ((0,),)


def test_principal_submatrix_errors():
    m = distance_matrix(path(3))
    with pytest.raises(ValueError):
        principal_submatrix(m, [1, 1])
    with pytest.raises(ValueError):
        principal_submatrix(m, [4])


def test_lp_metric_small():
    pts = ((0, 0), (1, 1))
    assert lp_point_metric(PointSet(pts, 1)).d == ((0, 2), (2, 0))
    assert lp_point_metric(PointSet(pts, math.inf)).d == ((0, 1), (1, 0))
    assert lp_point_metric(PointSet(pts, 2))[0, 1] == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("p", [1, 2, 3, 10, math.inf])
def test_lp_metric_on_a_line(p):
    d = lp_point_metric(PointSet(((0,), (3,), (5,)), p))
    assert d.d == ((0, 3, 5), (3, 0, 2), (5, 2, 0))


def test_pointset_rejects_small_p():
    with pytest.raises(ValueError):
        PointSet(((0,), (1,)), Fraction(1, 2))


def test_parse_metric_roundtrip():
    m = distance_matrix(path(4, [Fraction(1, 2), 1, 2]))
    assert parse_metric(m.to_text()) == m


def test_parse_metric_names_invariant():
    with pytest.raises(MetricFormatError, match="symmetric"):
        parse_metric("metric 2\n0 1\n2 0\n")
    with pytest.raises(MetricFormatError, match="triangle"):
        parse_metric("metric 3\n0 5 1\n5 0 1\n1 1 0\n")


@pytest.mark.parametrize("text", ["", "matrix 2\n0 1\n1 0", "metric 2\n0 1", "metric 2\n0 1\n1", "metric 2\n0 x\nx 0"])
def test_parse_metric_format_errors(text):
    with pytest.raises(MetricFormatError):
        parse_metric(text)
