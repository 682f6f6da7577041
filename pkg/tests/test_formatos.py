import json

import pytest

from reticulos.biblioteca import crown, sugihara
from reticulos.cadenas import from_emp, to_emp
from reticulos.errores import ErrorReticulo, FormatoInvalido, NotResiduated, UnknownName
from reticulos.formatos import (
    a_json,
    cargar,
    cargar_algebra,
    desde_json,
    emp_a_texto,
    emp_desde_texto,
    guardar,
)
from reticulos.nucleo import same_algebra


def test_emp_text_of_sugihara_5(sug5):
    assert emp_a_texto(to_emp(sug5)) == "+1\n+a2\n-b2\n+a1\n-b1\n"


def test_emp_text_with_pairs():
    texto = "# corona\n+1\n+a2\n+a1 -b1 L\n\n-b0\n"
    A = from_emp(emp_desde_texto(texto))
    assert same_algebra(A, crown(1, [1]))


@pytest.mark.parametrize(
    "texto",
    ["", "1\n-b", "+1\n+a -b X\n-c\n", "+1\n*b\n", "+1\n+a -b\n"],
)
def test_bad_emp_text(texto):
    with pytest.raises(FormatoInvalido):
        emp_desde_texto(texto)


def test_json_file(tmp_path, sug3):
    ruta = guardar(sug3, tmp_path / "sug3.json")
    datos = json.loads(ruta.read_text(encoding="utf-8"))
    assert datos["name"] == "sug3" and datos["kind"] == "table"
    assert datos["mult"]["b1"]["a1"] == "b1"
    assert same_algebra(cargar(ruta), sug3)


def test_emp_file_and_json_emp(tmp_path, sug5):
    P = to_emp(sug5)
    assert same_algebra(cargar_algebra(guardar(P, tmp_path / "s5.emp")), sug5)
    assert same_algebra(cargar_algebra(guardar(P, tmp_path / "s5.json")), sug5)


def test_only_emp_goes_to_emp_text(tmp_path, sug3):
    with pytest.raises(ErrorReticulo):
        guardar(sug3, tmp_path / "sug3.emp")


def test_library_reference():
    assert same_algebra(cargar("lib:sugihara:5"), sugihara(5))
    with pytest.raises(UnknownName):
        cargar("lib:nada")


def test_missing_file(tmp_path):
    with pytest.raises(FormatoInvalido):
        cargar(tmp_path / "no-existe.json")


def test_bad_json():
    with pytest.raises(FormatoInvalido):
        desde_json("{")
    with pytest.raises(FormatoInvalido):
        desde_json(json.dumps({"elements": ["1"], "unit": "1"}))
    with pytest.raises(FormatoInvalido):
        desde_json(json.dumps({"elements": ["1"], "unit": "u", "covers": [], "mult": {}}))


_SUG3 = {
    "elements": ["b1", "1", "a1"],
    "unit": "1",
    "covers": [["b1", "1"], ["1", "a1"]],
    "mult": {
        "b1": {"b1": "b1", "1": "b1", "a1": "b1"},
        "1": {"b1": "b1", "1": "1", "a1": "a1"},
        "a1": {"b1": "b1", "1": "a1", "a1": "a1"},
    },
}


@pytest.mark.parametrize(
    "cambio",
    [
        {"covers": [1]},
        {"covers": [["b1", "1", "a1"]]},
        {"covers": "b1<1"},
        {"elements": "b1,1,a1"},
        {"elements": ["b1", 1, "a1"]},
        {"unit": ["1"]},
        {"mult": [["b1"]]},
        {"mult": {"b1": "b1", "1": "1", "a1": "a1"}},
        {"kind": "emp", "layers": [1, 2]},
        {"kind": "emp", "layers": "+a1"},
    ],
)
def test_malformed_fields_are_format_errors(cambio):
    assert desde_json(json.dumps(_SUG3)).n == 3
    with pytest.raises(FormatoInvalido):
        desde_json(json.dumps({**_SUG3, **cambio}))


def test_json_with_non_residuated_table():
    datos = {
        "elements": ["0", "u", "2"],
        "unit": "u",
        "covers": [["0", "u"], ["u", "2"]],
        "mult": {
            "0": {"0": "0", "u": "0", "2": "2"},
            "u": {"0": "0", "u": "u", "2": "2"},
            "2": {"0": "2", "u": "2", "2": "2"},
        },
    }
    with pytest.raises(NotResiduated):
        desde_json(json.dumps(datos))


def test_json_text_is_stable(sug3):
    assert a_json(sug3, "x") == a_json(sug3, "x")
    assert json.loads(a_json(to_emp(sug3)))["layers"] == ["+a1", "-b1"]
