import pytest

from reticulos.biblioteca import sugihara
from reticulos.cadenas import codigo_capas
from reticulos.congruencias import uno_es_irreducible
from reticulos.enumeracion import (
    CONICAS,
    FSI,
    cadena_de_codigo,
    cadena_rapida,
    cadenas_oraculo,
    canonical_form,
    catalogo_cadenas,
    catalogo_distributivos,
    catalogo_prerreticulos,
    catalogo_reticulos,
    conicas_oraculo,
    contar_cadenas,
    enumerar,
    enumerate_chains,
    enumerate_conic,
    esqueletos_posibles,
    layer_sequences,
)
from reticulos.errores import ErrorReticulo
from reticulos.nucleo import inv_ell, inv_r, renombrar, reorder


def test_chain_counts():
    assert [contar_cadenas(n) for n in range(1, 6)] == [1, 1, 2, 6, 16]


def test_two_element_chain_is_negative():
    assert list(layer_sequences(2)) == ["-"]
    (A,) = enumerate_chains(2)
    assert A.unit == 1 and A.labels == ("b1", "1")


def test_conic_count_size_4():
    assert len(list(enumerate_conic(4))) == 7


def test_enumerations_have_no_duplicates():
    for n in range(1, 6):
        formas = [canonical_form(A) for A in enumerate_conic(n)]
        assert len(formas) == len(set(formas))


def test_chains_agree_with_table_oracle():
    for n in range(1, 5):
        assert len(cadenas_oraculo(n)) == contar_cadenas(n)


def test_conic_agree_with_table_oracle():
    for n in range(1, 5):
        esperadas = {canonical_form(A) for A in conicas_oraculo(n)}
        assert {canonical_form(A) for A in enumerate_conic(n)} == esperadas


@pytest.mark.lento
def test_conic_oracle_size_5():
    esperadas = {canonical_form(A) for A in conicas_oraculo(5)}
    assert {canonical_form(A) for A in enumerate_conic(5)} == esperadas


def test_fast_chain_matches_tables():
    """ℓ y r de las reglas de capas coinciden con los residuos de las tablas."""
    for n in range(1, 8):
        for codigo in layer_sequences(n):
            rapida = cadena_rapida(codigo)
            A = cadena_de_codigo(codigo)
            assert rapida.etiquetas == A.labels
            assert rapida.unidad == A.unit
            assert rapida.ell == tuple(inv_ell(A, x) for x in range(A.n))
            assert rapida.r == tuple(inv_r(A, x) for x in range(A.n))


def test_fast_chain_rejects_bad_code():
    with pytest.raises(ErrorReticulo):
        cadena_rapida("+")


def test_possible_skeletons_are_quasi_involutive():
    codigos = [S.codigo for S in esqueletos_posibles(5)]
    assert "-+-+" in codigos
    assert all(S.es_cuasi_involutiva for S in esqueletos_posibles(5))


def test_block_catalogs():
    assert len(catalogo_prerreticulos(3)) == 2
    assert len(catalogo_reticulos(4)) == 2
    assert len(catalogo_reticulos(5)) == 5
    assert len(catalogo_distributivos(5)) == 3
    assert len(catalogo_cadenas(4)) == 1


def test_canonical_form_ignores_labels_and_order():
    A = sugihara(5)
    B = reorder(renombrar(A, {"b1": "x", "a1": "y"}), ["y", "1", "x", "a2", "b2"])
    assert canonical_form(A) == canonical_form(B)
    assert canonical_form(A) != canonical_form(sugihara(3))
    assert codigo_capas(A) == "-+-+"


def test_enumerar_by_kind():
    assert len(list(enumerar(CONICAS, 3))) == len(list(enumerate_conic(3)))
    for A in enumerar(FSI, 4):
        assert uno_es_irreducible(A)
    with pytest.raises(ErrorReticulo):
        list(enumerar("lattices", 3))
