import json

import pytest

from oscomp import TOP, Completion, DirectSum, Principal, corpus
from oscomp.errors import ParseError
from oscomp.io import (
    instance_from_json,
    instance_to_json,
    interval_from_json,
    jsonable,
    load_model,
    model_from_json,
    model_to_json,
)


@pytest.mark.parametrize("model", [
    corpus.family_wn(3),
    corpus.family_womega(3),
    corpus.random_model(2, corpus.RandomModelParams(kind="affine", generators=3)),
    corpus.random_model(5, corpus.RandomModelParams(kind="mixed")),
])
def test_model_round_trip(model):
    assert model_from_json(json.loads(json.dumps(model_to_json(model)))) == model


def test_strings_are_read_as_integers():
    model = model_from_json({"kind": "numerical", "generators": ["3", "4"], "element_bound": "100"})
    assert model.generators == (3, 4) and model.element_bound == 100


@pytest.mark.parametrize("obj,where", [
    ({"kind": "numerical"}, "model.generators"),
    ({"kind": "torus", "generators": []}, "model.kind"),
    ({"kind": "numerical", "generators": [3], "order_mode": "sideways"}, "model.order_mode"),
    ({"kind": "direct_sum", "components": [{"kind": "numerical", "generators": "x"}]}, "model.components[0].generators"),
])
def test_parse_errors_carry_locations(obj, where):
    with pytest.raises(ParseError) as info:
        model_from_json(obj)
    assert info.value.location == where


def test_bad_file_reports_line(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"kind": "numerical",\n "generators": [3, }')
    with pytest.raises(ParseError) as info:
        load_model(path)
    assert info.value.location.startswith(f"{path}:2:")


def test_interval_forms():
    comp = Completion(DirectSum((corpus.family_wn(1), corpus.family_wn(1))))
    assert interval_from_json(comp, "top") == TOP
    assert interval_from_json(comp, [[0, 2]]) == interval_from_json(comp, {"principal": [[0, 2]]})
    chain = interval_from_json(comp, {"chain": {"preamble": [[[0, 2]]], "increment": [[0, 2]]}})
    assert chain.increment == comp.base.normalize([[0, 2]])
    with pytest.raises(ParseError):
        interval_from_json(comp, {"principal": [[0, 1]]})


def test_instance_round_trip():
    comp = Completion(corpus.family_wn(2))
    obj = {"x_prime": 3, "m": 1, "x_seq": {"preamble": [0], "period": [3]},
           "y_seq": {"preamble": [], "period": [{"principal": 3}, {"chain": {"preamble": [4], "increment": 4}}]}}
    inst = instance_from_json(comp, obj)
    assert inst.x_prime == Principal(3) and inst.y_seq.period[1] == TOP
    assert instance_from_json(comp, instance_to_json(comp.base, inst)) == inst


def test_missing_instance_field():
    comp = Completion(corpus.family_wn(2))
    with pytest.raises(ParseError):
        instance_from_json(comp, {"x_prime": 3, "m": 1})


def test_jsonable_formats_fractions_and_enums():
    from fractions import Fraction

    from oscomp import Status

    assert jsonable({"v": Fraction(3, 4), "w": Fraction(2), "s": Status.HOLDS}) == {"v": "3/4", "w": 2, "s": "Holds"}
