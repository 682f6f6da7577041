import json

import pytest
from click.testing import CliRunner

from cli import SALIDA_COTA, SALIDA_ENTRADA, SALIDA_FALLA, SALIDA_OK, cli, cli_main
from reticulos.biblioteca import sugihara
from reticulos.descomposicion import Bloque, build_algebra, sistema
from reticulos.formatos import guardar


@pytest.fixture
def runner():
    return CliRunner()


def test_verify_library_algebra(runner):
    resultado = runner.invoke(cli, ["verify", "lib:sugihara:5"])
    assert resultado.exit_code == SALIDA_OK
    assert "OK" in resultado.output


def test_verify_broken_emp(runner, tmp_path):
    ruta = tmp_path / "roto.emp"
    ruta.write_text("+1\n+a\n", encoding="utf-8")
    assert runner.invoke(cli, ["verify", str(ruta)]).exit_code == SALIDA_FALLA


def test_missing_file_is_input_error(runner, tmp_path):
    resultado = runner.invoke(cli, ["verify", str(tmp_path / "nada.json")])
    assert resultado.exit_code == SALIDA_ENTRADA


def test_malformed_json_file_is_input_error(runner, tmp_path):
    ruta = tmp_path / "roto.json"
    ruta.write_text(json.dumps({"elements": ["1"], "unit": "1", "covers": [1], "mult": {"1": {"1": "1"}}}), encoding="utf-8")
    resultado = runner.invoke(cli, ["verify", str(ruta)])
    assert resultado.exit_code == SALIDA_ENTRADA
    assert "Traceback" not in resultado.output


def test_unknown_library_name(runner):
    assert runner.invoke(cli, ["library", "show", "boolean"]).exit_code == SALIDA_ENTRADA


def test_library_show_is_json(runner):
    resultado = runner.invoke(cli, ["library", "show", "sugihara", "3"])
    assert resultado.exit_code == SALIDA_OK
    assert json.loads(resultado.output)["unit"] == "1"


def test_library_list(runner):
    salida = runner.invoke(cli, ["library", "list"]).output
    assert "sugihara n:" in salida
    assert "fig_APfails2 (formación en V)" in salida


def test_props_with_report(runner, tmp_path):
    reporte = tmp_path / "props.csv"
    resultado = runner.invoke(cli, ["props", "lib:fig_APfails2_B", "--report", str(reporte)])
    assert resultado.exit_code == SALIDA_OK
    assert "testigo no conjuntivo" in resultado.output
    assert reporte.exists()


def test_emp_conversion(runner, tmp_path):
    destino = tmp_path / "s5.emp"
    assert runner.invoke(cli, ["emp", "lib:sugihara:5", "--to", str(destino)]).exit_code == SALIDA_OK
    assert destino.read_text(encoding="utf-8") == "+1\n+a2\n-b2\n+a1\n-b1\n"
    vuelta = tmp_path / "s5.json"
    assert runner.invoke(cli, ["emp", str(destino), "--to", str(vuelta)]).exit_code == SALIDA_OK
    assert json.loads(vuelta.read_text(encoding="utf-8"))["kind"] == "table"


def test_decompose(runner):
    resultado = runner.invoke(cli, ["decompose", "lib:sugihara3_brouwer"])
    assert resultado.exit_code == SALIDA_OK
    assert "esqueleto: b1 < 1 < a1" in resultado.output
    assert "brouwerian" in resultado.output


def test_amalgamate_chains(runner, tmp_path):
    c_emp = tmp_path / "c.emp"
    c_emp.write_text("+1\n+d\n-c\n", encoding="utf-8")
    resultado = runner.invoke(
        cli, ["amalgamate", "lib:trivial", "lib:sugihara:3", str(c_emp), "--class", "chains-star-inv"]
    )
    assert resultado.exit_code == SALIDA_OK
    assert "|D| = 5" in resultado.output


def test_amalgamate_non_conjunctive_fails(runner):
    args = ["amalgamate", "lib:fig_APfails2_A", "lib:fig_APfails2_B", "lib:fig_APfails2_C"]
    resultado = runner.invoke(cli, args + ["--class", "rigid-conjunctive-conic"])
    assert resultado.exit_code == SALIDA_FALLA
    assert "NotConjunctive" in resultado.output


def test_search_without_result_exits_2(runner):
    args = ["search-amalgam", "lib:trivial", "lib:sugihara:3", "lib:godel:2"]
    resultado = runner.invoke(cli, args + ["--class", "chains", "--max-size", "3"])
    assert resultado.exit_code == SALIDA_COTA
    assert "no amalgam up to 3" in resultado.output


def test_chain_failure_search_up_to_12(runner):
    args = ["search-amalgam", "lib:fig_APfails_A", "lib:fig_APfails_B", "lib:fig_APfails_C"]
    resultado = runner.invoke(cli, args + ["--class", "chains", "--max-size", "12"])
    assert resultado.exit_code == SALIDA_COTA
    assert "no amalgam up to 12" in resultado.output
    assert "aviso" not in resultado.output


def test_amalgamate_distributive_reports_non_strong(runner, tmp_path):
    def _cuadrado(atomo):
        return Bloque.desde_coberturas(
            ["z", "x", atomo, "a1"], [("z", "x"), ("z", atomo), ("x", "a1"), (atomo, "a1")], "a1"
        )

    rutas = []
    for nombre, bloque in (("a", Bloque.cadena(["z", "x", "a1"])), ("b", _cuadrado("y")), ("c", _cuadrado("w"))):
        X = build_algebra(sistema(sugihara(3), {"a1": bloque}))
        rutas.append(str(guardar(X, tmp_path / f"{nombre}.json")))
    resultado = runner.invoke(cli, ["amalgamate", *rutas, "--class", "rigid-conjunctive-conic", "--distributive"])
    assert resultado.exit_code == SALIDA_OK
    assert "amalgama no fuerte: |D| = 6" in resultado.output


def test_enumerate_count_and_emit(runner, tmp_path):
    resultado = runner.invoke(cli, ["enumerate", "--kind", "chains", "--size", "5", "--count"])
    assert resultado.output.strip() == "16"
    destino = tmp_path / "conicas"
    resultado = runner.invoke(cli, ["enumerate", "--kind", "conic", "--size", "4", "--emit", str(destino)])
    assert resultado.exit_code == SALIDA_OK
    assert len(list(destino.glob("*.json"))) == 7


def test_enumerate_needs_one_mode(runner):
    resultado = runner.invoke(cli, ["enumerate", "--kind", "chains", "--size", "3"])
    assert resultado.exit_code == SALIDA_ENTRADA


def test_render_to_file(runner, tmp_path):
    salida = tmp_path / "s3.dot"
    resultado = runner.invoke(cli, ["render", "lib:sugihara:3", "--view", "hasse", "-o", str(salida)])
    assert resultado.exit_code == SALIDA_OK
    assert salida.read_text(encoding="utf-8").startswith("digraph")


def test_cli_main_returns_codes():
    assert cli_main(["library", "show", "sugihara", "3"]) == SALIDA_OK
    assert cli_main(["verify", "lib:nada"]) == SALIDA_ENTRADA
    assert cli_main(["comando-inexistente"]) == SALIDA_ENTRADA
