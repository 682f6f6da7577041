from dataclasses import replace

import pytest
from hypothesis import given, settings

from reticulos.biblioteca import godel, sugihara
from reticulos.cadenas import (
    DERECHA,
    IZQUIERDA,
    Layer,
    LayerSeq,
    check_natural_vs_monoidal,
    classify_pair,
    codigo_capas,
    crown,
    crown_decomposition,
    emp_from_layers,
    from_emp,
    generate_subalgebra,
    igc_reduct,
    igc_without_condition_5,
    is_vertical_crown,
    layers,
    nested_sum,
    residuated_from_igc,
    to_emp,
    unit_isolated,
    upset_star,
    verify_emp,
    verify_igc,
)
from reticulos.enumeracion import cadena_de_codigo, enumerate_chains
from reticulos.errores import ErrorReticulo, InvalidEMP, NotAChain, NotStarInvolutive, SideConditionViolated
from reticulos.nucleo import direct_product, find_isomorphism, renombrar, same_algebra

from tests.conftest import codigos_de_cadenas


def test_emp_and_igc_roundtrips_small():
    """from_emp∘to_emp e igc: ida y vuelta exactas para n ≤ 6."""
    for n in range(1, 7):
        for A in enumerate_chains(n):
            assert same_algebra(from_emp(to_emp(A)), A)
            assert same_algebra(residuated_from_igc(igc_reduct(A)), A)


@pytest.mark.lento
def test_emp_and_igc_roundtrips_size_7():
    for A in enumerate_chains(7):
        assert same_algebra(from_emp(to_emp(A)), A)
        assert same_algebra(residuated_from_igc(igc_reduct(A)), A)


def test_every_igc_gives_a_residuated_chain():
    for n in range(1, 7):
        for A in enumerate_chains(n):
            G = igc_reduct(A)
            assert verify_igc(G)
            assert residuated_from_igc(G).n == n


def test_condition_5_is_independent():
    G = igc_without_condition_5(5)
    assert verify_igc(G).condiciones_fallidas() == ["5"]


def test_to_emp_requires_chain():
    with pytest.raises(NotAChain):
        to_emp(direct_product(sugihara(3), sugihara(3)))


def test_layers_of_sugihara_5(sug5):
    seq = layers(to_emp(sug5))
    assert seq.codigo == "-+-+"
    assert seq.layers[0] == Layer("-", negative="b1")
    assert seq.layers[-1] == Layer("+", positive="a2")
    assert upset_star(to_emp(sug5), "b2") == {"b2", "a2", "1"}


def test_emp_from_layers_positive_needs_negative_below():
    with pytest.raises(InvalidEMP):
        emp_from_layers(LayerSeq((Layer("+", positive="a"),)))


def test_broken_star_is_reported(sug3):
    P = to_emp(sug3)
    roto = replace(P, star=tuple(range(P.n)))
    assert not verify_emp(roto)
    with pytest.raises(InvalidEMP):
        from_emp(roto)


@settings(max_examples=80, deadline=None)
@given(codigos_de_cadenas(7))
def test_layer_code_survives_roundtrip(codigo):
    A = cadena_de_codigo(codigo)
    assert codigo_capas(A) == codigo
    assert check_natural_vs_monoidal(A)


def test_classify_pairs():
    L = crown(1, [1])
    R = crown(1)
    assert classify_pair(L, L.indice("a1"), L.indice("b1")) == IZQUIERDA
    assert classify_pair(R, R.indice("a1"), R.indice("b1")) == DERECHA
    assert classify_pair(L, L.indice("a2"), L.indice("b1")) == "C"


def test_central_pair_in_sugihara(sug3):
    assert classify_pair(sug3, sug3.indice("a1"), sug3.indice("b1")) == "C"


def test_unit_isolated(sug3):
    assert unit_isolated(sug3)
    assert not unit_isolated(godel(2))


def test_crown_is_one_generated():
    A = crown(2, [2])
    todos = frozenset(range(A.n))
    for x in range(A.n):
        if x != A.unit:
            assert generate_subalgebra(A, [x]) == todos
    assert is_vertical_crown(to_emp(A)).L == {2}


def test_crown_decomposition_of_sugihara_5(sug5):
    indices, sumandos = crown_decomposition(sug5)
    assert indices == [0, 1]
    assert [set(S.labels) for S in sumandos] == [{"b1", "1", "a1"}, {"b2", "1", "a2"}]


def test_crown_decomposition_requires_star_involution():
    B = cadena_de_codigo("-L")
    with pytest.raises(NotStarInvolutive):
        crown_decomposition(B)


def test_nested_sum_rebuilds_sugihara_5():
    externa = sugihara(3)
    interna = renombrar(sugihara(3), {"b1": "b2", "a1": "a2"})
    suma = nested_sum([0, 1], [externa, interna])
    assert same_algebra(suma, sugihara(5))
    suma_emp = nested_sum([0, 1], [to_emp(externa), to_emp(interna)])
    assert find_isomorphism(from_emp(suma_emp), sugihara(5)) is not None


def test_nested_sum_follows_index_order():
    externa = sugihara(3)
    interna = renombrar(sugihara(3), {"b1": "b2", "a1": "a2"})
    assert same_algebra(nested_sum([7, 3], [interna, externa]), sugihara(5))
    assert not same_algebra(nested_sum([3, 7], [interna, externa]), sugihara(5))
    with pytest.raises(ErrorReticulo):
        nested_sum([1, 1], [externa, interna])


def test_nested_sum_side_condition():
    """Un sumando no final no puede tener inversos iguales a 1."""
    with pytest.raises(SideConditionViolated) as info:
        nested_sum([0, 1], [godel(2), renombrar(sugihara(3), {"b1": "x", "a1": "y"})])
    assert info.value.indice == 0
    with pytest.raises(SideConditionViolated) as info:
        nested_sum([9, 4], [renombrar(sugihara(3), {"b1": "x", "a1": "y"}), godel(2)])
    assert info.value.indice == 4
