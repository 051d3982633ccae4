import json
import os
from pathlib import Path

import pytest

import balcat

DATA = Path(os.environ.get("BALCAT_DATA", Path(__file__).resolve().parents[2] / "data"))


def test_interval_hom_sets():
    x = balcat.Category.interval()
    assert x.objects == ["0", "1"]
    assert balcat.hom_size(x, "0", "1") == 1
    assert balcat.hom_size(x, "1", "0") == 0
    assert balcat.hom_size(x, "0", "0") == 1


def test_category_json_round_trip():
    x = balcat.Category.from_file(str(DATA / "span.json"))
    again = balcat.Category.from_json(x.to_json())
    assert again.objects == x.objects
    assert sorted(again.morphisms) == sorted(x.morphisms)
    assert json.loads(again.to_json()) == json.loads(x.to_json())


def test_invalid_category_raises():
    with pytest.raises(balcat.ValidationError, match=r"\(a, a\)"):
        balcat.Category.from_file(str(DATA / "bad_compose.json"))
    with pytest.raises(balcat.InputError):
        balcat.Category.from_json("{ not json")


def test_points_of_the_interval():
    x = balcat.Category.interval()
    p0 = balcat.Functor.point(x, "0")
    p1 = balcat.Functor.point(x, "1")
    assert balcat.is_final(p1)[0]
    holds, witness = balcat.is_final(p0)
    assert not holds and witness
    assert balcat.is_initial(p0)[0]
    assert balcat.is_discrete_fibration(p0)[0]
    assert not balcat.is_discrete_opfibration(p0)[0]
    assert balcat.is_discrete_opfibration(p1)[0]
    assert not balcat.is_discrete_fibration(p1)[0]


def test_left_factorization_composes_back():
    f = balcat.Functor.from_file(str(DATA / "point0.json"))
    e, mid, m = balcat.factorize(f, "left")
    assert e.then(m) == f
    assert balcat.is_final(e)[0]
    assert balcat.is_discrete_fibration(m)[0]
    # already a discrete fibration: nothing maps from 1 back to 0
    assert len(mid) == 1
    assert balcat.reflect(f) == {"0": 1, "1": 0}


def test_right_factorization():
    f = balcat.Functor.from_file(str(DATA / "point1.json"))
    e, mid, m = balcat.factorize(f, system="right")
    assert e.then(m) == f
    assert balcat.is_initial(e)[0]
    assert balcat.is_discrete_opfibration(m)[0]
    assert balcat.coreflect(f) == {"0": 0, "1": 1}
    with pytest.raises(ValueError):
        balcat.factorize(f, "sideways")


def test_cyclic_group_mu_is_associative():
    z2 = balcat.Category.cyclic_group(2)
    assert len(z2.morphisms) == 2
    assert balcat.hom_size(z2, z2.objects[0], z2.objects[0]) == 2
    assert balcat.mu_violations(z2) == 0


def test_law_suite_is_deterministic():
    a = balcat.run_laws(["prop4", "eq3a"], seed=3, count=6)
    b = balcat.run_laws(["prop4", "eq3a"], seed=3, count=6)
    assert a == b
    assert "prop4" in balcat.law_ids()
    with pytest.raises(ValueError):
        balcat.run_laws(["no-such-law"])


def test_cli_in_process():
    code, out, _ = balcat.cli("check", "final", str(DATA / "point1.json"))
    assert code == 0
    assert json.loads(out)["holds"] is True
    code, _, _ = balcat.cli("check", "final", str(DATA / "point0.json"))
    assert code == 1
    code, _, err = balcat.cli("validate", str(DATA / "syntax_error.json"))
    assert code == 2 and err
