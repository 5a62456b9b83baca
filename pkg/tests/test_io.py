import json

import numpy as np
import pytest

from tcohom import CochainSpace, FinAbGroup, abelian_heap, catalog_group, cohomology, mod_square_ses
from tcohom import io as tio
from tcohom.transfers import ExtensionSpec


def test_parse_error_position():
    with pytest.raises(tio.InputError, match=r"^f.json:2:8: "):
        tio.parse_json('{"a": 1,\n  "b": ]}', "f.json")


def test_missing_file(tmp_path):
    with pytest.raises(tio.InputError):
        tio.read_json(tmp_path / "absent.json")


@pytest.mark.parametrize("s", [abelian_heap(3), catalog_group("S3")], ids=["ternary", "group"])
def test_structure_round_trip(s):
    data = tio.structure_to_json(s)
    back = tio.structure_from_json(json.loads(json.dumps(data)))
    assert tio.structure_to_json(back) == data


def test_labels_survive():
    t = abelian_heap(2)
    data = dict(tio.structure_to_json(t), labels=["p", "q"])
    assert tio.structure_to_json(tio.structure_from_json(data))["labels"] == ["p", "q"]


@pytest.mark.parametrize(
    "data,fragment",
    [
        ({"kind": "ternary", "size": 2, "table": [0] * 7}, "expected 8 entries"),
        ({"kind": "quaternary", "size": 1, "table": [0]}, "kind"),
        ({"kind": "ternary", "size": 2}, "missing field 'table'"),
        ({"kind": "ternary", "size": 1, "table": [True]}, "integer"),
        ({"kind": "ternary", "size": 2, "table": [0, 1, 1, 0, 1, 0, 0, 7]}, "structure"),
    ],
)
def test_structure_errors(data, fragment):
    with pytest.raises(tio.InputError, match=fragment):
        tio.structure_from_json(data)


def test_cochain_formats():
    A = FinAbGroup([3])
    sp = CochainSpace(1, 3, A)
    assert tio.cochain_from_json([4], sp).tolist() == [1]
    assert tio.cochain_from_json([[5]], sp).tolist() == [2]
    with pytest.raises(tio.InputError):
        tio.cochain_from_json([1, 2], sp)
    B = FinAbGroup([2, 2])
    sp2 = CochainSpace(1, 3, B)
    assert tio.cochain_to_json(tio.cochain_from_json([[1, 3]], sp2), sp2) == [[1, 1]]


def test_extension_spec_round_trip():
    t, A = abelian_heap(2), FinAbGroup([2])
    eta = CochainSpace(2, 3, A).chi((0, 1, 0), (1, 0, 1))
    data = tio.extension_spec_to_json(ExtensionSpec(t, A, eta))
    back = tio.extension_spec_from_json(data)
    assert np.array_equal(back.eta, eta)


def test_extension_spec_rejects_non_cocycle():
    t, A = abelian_heap(2), FinAbGroup([2])
    data = tio.extension_spec_to_json(ExtensionSpec(t, A, np.zeros(8, dtype=int)))
    data["eta"][0] = [1]
    with pytest.raises(tio.InputError):
        tio.extension_spec_from_json(data)


def test_ses_round_trip():
    s = mod_square_ses(3)
    data = tio.ses_spec_to_json(s)
    assert tio.ses_spec_to_json(tio.ses_spec_from_json(data)) == data


def test_cohomology_json():
    out = tio.cohomology_to_json(cohomology(abelian_heap(2), FinAbGroup([2]), "heap", 2))
    assert out["invariant_factors"] == [2]
    assert len(out["representatives"]) == 1 and len(out["representatives"][0]) == 8


def test_digest_is_order_independent():
    assert tio.digest({"a": 1, "b": [1, 2]}) == tio.digest({"b": [1, 2], "a": 1})
