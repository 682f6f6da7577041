import pytest

from reticulos.biblioteca import crown
from reticulos.cadenas import to_emp
from reticulos.diagramas import FLUJO, HASSE, VISTA_EMP, render
from reticulos.errores import ErrorReticulo


def test_hasse_marks_unit(sug3):
    dot = render(sug3, HASSE)
    assert dot.startswith('digraph "A" {')
    assert '"1" [shape=doublecircle];' in dot
    assert '"b1" -> "1" [arrowhead=none];' in dot
    assert '"b1" -> "a1"' not in dot


def test_emp_view_draws_pairs():
    dot = render(crown(1, [1]), VISTA_EMP, "corona")
    assert '"a1" -> "b1" [dir=both, constraint=false];' in dot
    assert "rank=same" in dot
    R = render(to_emp(crown(1)), VISTA_EMP)
    assert "style=dotted" in R


def test_flow_shapes():
    A = crown(1, [1])
    dot = render(A, FLUJO)
    assert '"a1" [shape=square];' in dot
    assert '"1" [shape=circle];' in dot
    assert "style=dashed" in dot


def test_output_is_deterministic(sug5):
    assert render(sug5, FLUJO) == render(sug5, FLUJO)


def test_unknown_view(sug3):
    with pytest.raises(ErrorReticulo):
        render(sug3, "3d")
