import pytest

from reticulos.amalgamas import VFormation
from reticulos.biblioteca import library_v
from reticulos.errores import UnknownFigure
from reticulos.fallas import FIGURAS, check_failure_argument, cota_por_defecto
from reticulos.nucleo import renombrar


@pytest.mark.parametrize("figura", sorted(FIGURAS))
def test_every_step_of_the_argument_holds(figura):
    """Sólo los pasos por tablas, sin la búsqueda acotada."""
    pasos = FIGURAS[figura].pasos(library_v(FIGURAS[figura].formacion))
    assert pasos
    fallidos = [p.nombre for p in pasos if not p.ok]
    assert fallidos == []


def test_contradiction_is_one_of_the_steps():
    for figura in FIGURAS.values():
        pasos = figura.pasos(library_v(figura.formacion))
        assert figura.contradiccion in {p.nombre for p in pasos}


@pytest.mark.parametrize(
    "figura, cota",
    [("APfails", 12), ("APfailsVar", 12), ("APfails2", 14), ("APfails3", 14)],
)
def test_default_bound_per_figure(figura, cota):
    V = library_v(FIGURAS[figura].formacion)
    assert cota_por_defecto(FIGURAS[figura], V) == cota
    assert cota >= max(V.B.n, V.C.n) + 1


def test_cover_step_is_checked_on_the_tables():
    V = library_v("fig_APfails")
    C = renombrar(V.C, {"a3'": "a2'", "a2'": "a3'"})
    pasos = {p.nombre: p for p in FIGURAS["APfails"].pasos(VFormation(V.A, V.B, C, V.fB, V.fC))}
    assert not pasos["a3 = a3'"].ok


def test_chain_failure_argument_small_bound():
    informe = check_failure_argument("APfails", cota=7)
    assert informe, informe.fallos
    assert informe.datos["contradiccion"] == "a'_2 = a'_3"
    assert informe.datos["cota"] == 7


@pytest.mark.lento
@pytest.mark.parametrize("figura", sorted(FIGURAS))
def test_failure_argument_with_default_bound(figura):
    informe = check_failure_argument(figura)
    assert informe, informe.fallos
    assert informe.datos["cota"] == FIGURAS[figura].cota
    assert informe.datos["completa"]
    assert set(informe.datos["eliminaciones"]) == set(FIGURAS[figura].clases)


def test_unknown_figure():
    with pytest.raises(UnknownFigure):
        check_failure_argument("APfails9")
