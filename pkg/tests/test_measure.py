import numpy as np
import pytest
from pydantic import ValidationError

from grsegments.analysis.properties import _random_measure, order_laws, prefix_and_top_laws
from grsegments.errors import InvalidInput
from grsegments.measure import (
    GrMeasure,
    Ordering,
    compare,
    extend,
    max_of,
    parse_measure,
    starts_with,
    top,
)

M = GrMeasure.of


def test_first_difference_decides():
    assert M(1, 3) < M(1, 2)
    assert M(1, 2, 4) < M(1, 2, 3)
    assert compare(M(1, 2), M(1, 3)) is Ordering.GREATER


def test_longer_prefix_is_greater():
    assert M(1) < M(1, 3)
    assert M(1, 2) < M(1, 2, 3)
    assert M(1, 3) < M(1, 3, 5) < M(1, 3, 5, 7)


def test_preprojective_chain_sits_below_h1():
    assert M(1, 3, 5, 7, 9) < M(1, 2)
    assert M(1, 2) < M(1, 2, 4) < M(1, 2, 4, 6)


def test_equal_measures():
    assert compare(M(1, 2, 4), M(1, 2, 4)) is Ordering.EQUAL
    assert M(1, 2) == M(1, 2)
    assert hash(M(1, 2)) == hash(M(1, 2))


def test_starts_with():
    assert starts_with(M(1, 2, 4), M(1, 2))
    assert starts_with(M(1, 2), M(1, 2))
    assert not starts_with(M(1, 3), M(1, 2))


def test_extend_and_top():
    assert extend(M(1, 2), 4) == M(1, 2, 4)
    assert top(M(1, 2, 4)) == 4
    with pytest.raises(InvalidInput):
        extend(M(1, 2), 2)


def test_max_of():
    assert max_of([M(1, 3), M(1, 2, 4), M(1)]) == M(1, 2, 4)
    with pytest.raises(InvalidInput):
        max_of([])


def test_text_form():
    assert str(M(1, 2, 4)) == "{1,2,4}"
    assert parse_measure(" {1, 2, 4} ") == M(1, 2, 4)
    with pytest.raises(InvalidInput):
        parse_measure("1,2")
    with pytest.raises(InvalidInput):
        parse_measure("{}")


def test_validation():
    with pytest.raises(ValidationError):
        GrMeasure(elements=(2, 1))
    with pytest.raises(ValidationError):
        GrMeasure(elements=(0, 1))
    with pytest.raises(ValidationError):
        GrMeasure(elements=())


def test_order_law_suites():
    rng = np.random.default_rng(7)
    assert order_laws(rng, samples=2000).ok
    result = prefix_and_top_laws(rng, samples=500, universe=8)
    assert result.ok
    assert result.checked == 500


def test_order_law_samples_stay_within_twelve():
    rng = np.random.default_rng(3)
    samples = [_random_measure(rng) for _ in range(2000)]
    assert all(1 <= x <= 12 for m in samples for x in m.elements)
    assert max(top(m) for m in samples) == 12
