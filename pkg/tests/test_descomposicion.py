import itertools

import pytest

from reticulos.biblioteca import library, sugihara
from reticulos.descomposicion import (
    Bloque,
    build_algebra,
    extract_system,
    is_subsystem,
    mismo_sistema,
    sistema,
    subvariety_profile,
    validate_system,
)
from reticulos.enumeracion import enumerate_conic
from reticulos.errores import InvalidSystem, NotCommutative
from reticulos.nucleo import same_algebra


def _roundtrip(n: int) -> None:
    for A in enumerate_conic(n):
        D = extract_system(A)
        assert same_algebra(build_algebra(D), A)
        assert mismo_sistema(extract_system(build_algebra(D)), D)


def test_decomposition_roundtrip_small():
    for n in range(1, 6):
        _roundtrip(n)


@pytest.mark.lento
def test_decomposition_roundtrip_size_6():
    _roundtrip(6)


def test_extract_system_brouwerian_block(brouwer3):
    D = extract_system(brouwer3)
    assert set(D.skeleton.labels) == {"b1", "1", "a1"}
    assert set(D.bloque("1").labels) == {"c", "1"}
    assert D.bloque("1").es_brouweriano
    assert D.tamano == 4


def test_proper_prelattice_block_keeps_lower_cover():
    B = library("fig_APfails2_B")
    D = extract_system(B)
    a = D.skeleton.indice("a")
    assert not D.blocks[a].es_reticulo
    assert D.skeleton.labels[D.lower_cover[a]] == "b"


def test_negative_block_must_be_brouwerian(sug3):
    m3 = Bloque.desde_coberturas(
        ["o", "x", "y", "z", "1"],
        [("o", "x"), ("o", "y"), ("o", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
        "1",
    )
    D = sistema(sug3, {"1": m3})
    assert "2" in validate_system(D).condiciones_fallidas()
    with pytest.raises(InvalidSystem):
        build_algebra(D)


def test_subsystem_matches_subalgebra(sug3, brouwer3):
    D_chico, D_grande = extract_system(sug3), extract_system(brouwer3)
    assert is_subsystem(D_chico, D_grande)
    assert not is_subsystem(D_grande, D_chico)


def test_subsystem_agrees_on_conic_pairs():
    """is_subsystem contrasta internamente con la prueba directa de subálgebra."""
    algebras = [A for n in range(1, 5) for A in enumerate_conic(n)]
    for A, B in itertools.product(algebras, repeat=2):
        is_subsystem(extract_system(A), extract_system(B))


def test_subvariety_profile_sugihara(sug5):
    perfil = subvariety_profile(sug5)
    assert perfil["R"] and perfil["ISL⋆"] and perfil["SGSM"] and perfil["CSGSM"]


def test_subvariety_profile_non_conjunctive():
    perfil = subvariety_profile(library("fig_APfails2_B"))
    assert not perfil["R"]
    assert not perfil["CR"]


def test_sgsm_needs_commutative():
    from reticulos.descomposicion import is_sgsm

    with pytest.raises(NotCommutative):
        is_sgsm(library("crown", [1, 1]))


def test_build_algebra_from_system_equals_library():
    S = sugihara(3)
    A = build_algebra(sistema(S, {"1": Bloque.cadena(["c", "1"])}))
    assert same_algebra(A, library("sugihara3_brouwer"))
