import pytest

import gimforge

EX1 = [[2, -1, 1], [-1, 2, -1], [1, -1, 2]]
EX2 = [[2, -1, 2], [-1, 2, -1], [2, -1, 2]]
EX3 = [[2, 2, 2, 2]] * 4
A2 = [[2, -1], [-1, 2]]


def test_validate_and_errors():
    assert gimforge.validate(A2) == A2
    with pytest.raises(gimforge.GimError, match="InvalidGim"):
        gimforge.validate([[2, 1], [-1, 2]])
    with pytest.raises(gimforge.GimError, match="NotSquare"):
        gimforge.validate([[2, 1]])


def test_symmetrizer_and_definiteness():
    assert gimforge.symmetrizer([[2, -1], [-3, 2]]) == [3, 1]
    assert gimforge.definiteness(EX2) == ("PositiveSemidefinite", 1)


def test_classify():
    rep = gimforge.classify(EX1)
    assert rep["label"] == "A_3(1)"
    rep = gimforge.classify(EX2)
    assert rep["corank"] == 1
    assert rep["affine"]["gim"] == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    gim, moves = gimforge.reduce_positive([[2, 1], [1, 2]])
    assert gim == A2 and len(moves) == 1


def test_templates_and_toroidal():
    t = gimforge.template("B_3(2,1)")
    assert gimforge.classify(t)["label"] == "B_3(2,1)"
    assert gimforge.diagram_dot("A_2(1)").startswith("digraph")
    assert gimforge.gim_from_toroidal(A2) == [[2, 2, -1], [2, 2, -1], [-1, -1, 2]]


def test_enumerate():
    en = gimforge.enumerate(A2)
    assert en["complete"]
    assert en["bases"] == 12
    assert len(en["distinct_gims"]) == 2


def test_lie_algebra():
    dims, complete = gimforge.graded_dims(A2, "gim", 3)
    assert complete
    assert {d: k for d, k in dims.items() if min(d) >= 0} == {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert not gimforge.bracket_eval(EX3, "[e1,[e2,[e3,f4]]]")["zero"]
    assert gimforge.bracket_eval(EX3, "[e1,[e2,[e3,f4]]]", "im")["zero"]
    assert gimforge.coset_obstruction(EX3, [1, 1, 1, -1]) == (True, None)
    assert gimforge.coset_obstruction(EX3, [1, 1, 0, 0]) == (False, (1, 2))
