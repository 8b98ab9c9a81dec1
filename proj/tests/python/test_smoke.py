import _opseries as op
import pytest


def test_assoc_dims():
    p = op.builtin("assoc")
    assert p.kind == "nonsym"
    assert op.basis_dims(p, 8) == [1] * 8
    assert op.solve_dims(p, 8) == [1] * 8
    assert op.solve_dims(p, 8, system="incl-excl") == [1] * 8


def test_parse_and_emit():
    p = op.parse("operad nonsym\ngen mu : 2\nrel mu(mu(-,-),-)\n")
    text = op.emit(p, "stump", "text")
    assert "y_mu = z^2 + z*y_mu" in text
    assert "G = z + y_mu" in text


def test_asw_rational():
    p = op.builtin("asw")
    num, den = op.guess_rational(p, 8, n=20)
    assert num == ["0", "1", "-1", "-1", "1", "1"]
    assert den == ["1", "-2", "-1", "2", "1"]


def test_alia_algebraic():
    p = op.builtin("alia")
    assert op.shuffle_regular(p)[0]
    eq = op.guess_algebraic(p, 3, 3, n=12)
    assert eq is not None and eq["verified"]
    assert eq["coeffs"][3] == ["1"]
    assert "y^3" in eq["text"]


def test_series_strings():
    p = op.builtin("nu2")
    coeffs = op.solve_series(p, 4)
    assert coeffs == ["1", "1", "2", "19/4"]


def test_errors():
    with pytest.raises(ValueError):
        op.builtin("no_such_operad")
    with pytest.raises(ValueError):
        op.parse("operad sideways\n")
    with pytest.raises(ValueError):
        op.emit(op.builtin("alia"), "incl-excl", "text")
