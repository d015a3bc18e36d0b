import pytest

from starclass.suites import SUITES, run_suite

SMALL = {
    "cut-oracle": {"pairs": 10},
    "lattice-oracle": {"pairs": 5},
    "dedekind-mertens": {"pairs": 5},
    "gauss-v": {"pairs": 5},
    "gauss-star": {"pairs": 10},
    "star-axioms": {"samples": 3},
    "phi-map": {"samples": 10},
    "transport": {"samples": 5},
    "group-order": {"triples": 20},
    "w-vs-t": {"samples": 5},
}


def test_every_suite_has_small_params():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_small_run(name):
    r = run_suite(name, 5, SMALL[name])
    assert r.passed, r.to_dict().get("witness")
    assert r.checked > 0
    assert run_suite(name, 5, SMALL[name]).to_dict() == r.to_dict()


def test_cases_override_sampling():
    r = run_suite("cut-oracle", 5, {"pairs": 3})
    first = run_suite("cut-oracle", 99, {"cases": [{"group": "Z", "k": 2, "B": 3,
                                                    "a": {"point": ["1"], "open": False, "depth": 1},
                                                    "b": {"point": ["-1/3"], "open": True, "depth": 1}}]})
    assert first.passed and first.checked == 1
    assert r.checked == 15


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 1)
