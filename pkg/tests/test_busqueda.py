import pytest

from reticulos.amalgamas import VFormation, verify_amalgam
from reticulos.biblioteca import library, library_v, sugihara, trivial
from reticulos.busqueda import (
    CLASE,
    CLASE_CADENAS,
    CLASE_CONICAS,
    CLASE_FSI,
    search_amalgam,
    search_amalgam_detallado,
)
from reticulos.errores import ErrorReticulo
from reticulos.nucleo import find_isomorphism, renombrar


@pytest.fixture
def cadenas(sug3, godel2_c):
    return VFormation.from_inclusions(trivial(), sug3, godel2_c)


def test_finds_smallest_chain_amalgam(cadenas):
    resultado = search_amalgam_detallado(cadenas, CLASE_CADENAS, 4)
    assert resultado.encontrada and resultado.completa
    cert = resultado.certificado
    assert cert.D.n == 4
    assert verify_amalgam(cadenas, cert)
    assert find_isomorphism(cert.D, library("sugihara3_brouwer")) is not None


def test_bound_too_small(cadenas):
    resultado = search_amalgam_detallado(cadenas, CLASE_CADENAS, 3)
    assert not resultado.encontrada
    assert resultado.esqueletos == 0
    assert search_amalgam(cadenas, CLASE_CADENAS, 3) is None


def test_conic_search_finds_sugihara_amalgam():
    V = VFormation.from_inclusions(trivial(), sugihara(3), renombrar(sugihara(3), {"b1": "c", "a1": "d"}))
    cert = search_amalgam(V, CLASE_CONICAS, 5)
    assert cert is not None
    assert cert.D.n == 5
    assert verify_amalgam(V, cert)


def test_one_sided_search(cadenas):
    cert = search_amalgam(cadenas, CLASE_FSI, 4, one_sided=True)
    assert cert is not None
    assert verify_amalgam(cadenas, cert, one_sided=True)


def test_out_of_class_sides_are_eliminated():
    resultado = search_amalgam_detallado(library_v("fig_APfails2"), CLASE_CADENAS, 10)
    assert not resultado.encontrada
    assert resultado.eliminados == {CLASE: 1}


def test_chain_failure_has_no_small_amalgam():
    V = library_v("fig_APfails")
    resultado = search_amalgam_detallado(V, CLASE_CADENAS, V.C.n + 1)
    assert not resultado.encontrada


def test_unknown_class():
    with pytest.raises(ErrorReticulo):
        search_amalgam(library_v("fig_APfails"), "lattices", 5)
