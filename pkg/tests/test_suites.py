import pytest

from extutte import suites


@pytest.mark.parametrize("kind", sorted(suites.SUITES))
def test_every_suite_passes_small(kind):
    res = suites.SUITES[kind](count=5, seed=11)
    assert res.ok, res.failures[:1]
    assert res.instances == 5
    assert res.summary().startswith(f"{kind}: PASS")


def test_suites_are_seeded():
    a = suites.suite_sum(count=5, seed=4)
    b = suites.suite_sum(count=5, seed=4)
    assert a.summary() == b.summary()
