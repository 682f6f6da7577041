import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reticulos.biblioteca import godel, sugihara
from reticulos.congruencias import (
    agregar_elemento,
    check_cep,
    check_join_one_implication,
    check_semiconic_schema,
    congruence_from_filter,
    enumerate_congruences,
    enumerate_filters,
    es_congruencia,
    es_filtro_congruencia,
    estabilizacion,
    filter_from_congruence,
    generate_filter_formula,
    generate_filter_oracle,
    is_fsi,
    is_semiconic_finite,
    is_si,
    monolith,
    quotient,
    s_iterado,
    s_term,
    t_term,
    uno_es_irreducible,
)
from reticulos.enumeracion import enumerate_conic
from reticulos.errores import NotSemiconicIdempotent
from reticulos.nucleo import FinResLat, direct_product, find_isomorphism

CONICAS_HASTA_4 = [A for n in range(1, 5) for A in enumerate_conic(n)]


def test_sugihara_3_is_simple(sug3):
    congruencias = enumerate_congruences(sug3)
    assert len(congruencias) == 2
    assert congruencias[0].es_identidad and congruencias[-1].es_total
    assert monolith(sug3).es_total
    assert is_si(sug3) and is_fsi(sug3)


def test_sugihara_5_monolith_and_quotient(sug5):
    theta = monolith(sug5)
    assert theta is not None
    assert set(sug5.etiquetas_de(theta.clase_de(sug5.unit))) == {"b2", "1", "a2"}
    Q = quotient(sug5, theta)
    assert Q.n == 3
    assert find_isomorphism(Q, sugihara(3)) is not None


def test_godel_filters_are_upsets():
    G = godel(3)
    filtros = enumerate_filters(G)
    assert [len(F) for F in filtros] == [1, 2, 3]
    assert is_si(G)


def test_product_is_not_fsi():
    P = direct_product(godel(2), godel(2))
    assert not uno_es_irreducible(P)
    assert not is_fsi(P)
    assert not is_si(P)


def test_filter_conditions_reported(sug5):
    b2 = sug5.indice("b2")
    assert not es_filtro_congruencia(sug5, [b2])
    assert es_filtro_congruencia(sug5, generate_filter_oracle(sug5, [b2]).elementos)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONICAS_HASTA_4), st.data())
def test_formula_agrees_with_oracle(A, data):
    """La fórmula con t_n coincide con la clausura por punto fijo."""
    Y = data.draw(st.sets(st.integers(min_value=0, max_value=A.n - 1), max_size=2))
    assert generate_filter_formula(A, Y) == generate_filter_oracle(A, Y)


def test_filters_and_congruences_correspond():
    for A in CONICAS_HASTA_4:
        for F in enumerate_filters(A):
            theta = congruence_from_filter(A, F)
            assert es_congruencia(A, theta)
            assert filter_from_congruence(A, theta) == F


def test_iterated_s_equals_s_n():
    for A in CONICAS_HASTA_4:
        for y in range(A.n):
            for n in range(1, 4):
                assert s_iterado(A, y, n) == s_term(A, y, n)
            assert 1 <= estabilizacion(A, y) <= A.n


def test_cep_and_join_one_on_small_conic():
    for A in CONICAS_HASTA_4:
        informe = check_cep(A)
        assert informe.datos["extensiones"]
        assert check_join_one_implication(A)


@pytest.mark.lento
def test_cep_size_5():
    for A in enumerate_conic(5):
        assert check_cep(A, exigir=False)
        assert check_join_one_implication(A)


def test_semiconic_schema_holds_on_semiconic():
    for A in CONICAS_HASTA_4:
        assert check_semiconic_schema(A)
    P = direct_product(sugihara(3), sugihara(3))
    assert is_semiconic_finite(P)
    assert check_semiconic_schema(P)


def test_formula_needs_idempotent():
    """Łukasiewicz de 3 elementos: a·a = 0."""
    leq = [[x <= y for y in range(3)] for x in range(3)]
    mult = [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    L3 = FinResLat.desde_tablas(["0", "a", "1"], leq, mult, 2)
    assert not L3.es_idempotente
    with pytest.raises(NotSemiconicIdempotent):
        generate_filter_formula(L3, [1])


def test_adding_an_element_to_a_filter():
    for A in CONICAS_HASTA_4:
        for F in enumerate_filters(A):
            for a in range(A.n):
                esperado = generate_filter_oracle(A, F.elementos | {a})
                assert agregar_elemento(A, F, a) == esperado


def test_s_term_on_involutive_chain(sug5):
    b1 = sug5.indice("b1")
    assert s_term(sug5, b1, 1) == b1
    assert t_term(sug5, b1, 2) == b1
    assert all(s_term(sug5, sug5.unit, n) == sug5.unit for n in range(1, 4))
