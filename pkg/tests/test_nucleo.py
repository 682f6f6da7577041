import logging

import pytest
from hypothesis import given, settings

from reticulos.biblioteca import godel, sugihara
from reticulos.enumeracion import cadena_de_codigo
from reticulos.errores import FormatoInvalido, NotALattice, NotConic, NotResiduated, UnitFailure
from reticulos.nucleo import (
    BROUWERIANO,
    TRIVIAL,
    FinResLat,
    block_kind,
    blocks,
    build_algebra_raw,
    direct_product,
    enumerate_subuniverses,
    find_isomorphism,
    gamma,
    inv_ell,
    inv_r,
    is_commutative,
    is_distributive,
    is_homomorphism,
    property_flags,
    renombrar,
    reorder,
    same_algebra,
    sign_of,
    skeleton,
    star_low,
    subalgebra,
    subuniverse_closure,
    verify_nucleus,
)

from tests.conftest import codigos_de_cadenas

SUGIHARA_3 = {
    "b": {"b": "b", "1": "b", "a": "b"},
    "1": {"b": "b", "1": "1", "a": "a"},
    "a": {"b": "b", "1": "a", "a": "a"},
}


def test_build_algebra_raw_sugihara_3():
    """Sugihara de 3 elementos a mano: residuos derivados e inversos."""
    A = build_algebra_raw(["b", "1", "a"], [("b", "1"), ("1", "a")], SUGIHARA_3, "1")
    b, a = A.indice("b"), A.indice("a")
    assert A.ld[b][b] == a
    assert inv_r(A, a) == b and inv_ell(A, a) == b
    assert inv_r(A, b) == a
    assert all(gamma(A, x) == x for x in range(A.n))
    assert same_algebra(A, renombrar(sugihara(3), {"b1": "b", "a1": "a"}))


def test_unit_failure():
    with pytest.raises(UnitFailure):
        build_algebra_raw(["0", "1"], [("0", "1")], [["0", "0"], ["0", "0"]], "1")


@pytest.mark.parametrize(
    "mult",
    [[["0", "0"]], [["0", "0"], ["0"]], [["0", "0"], ["0", "1"], ["0", "1"]]],
)
def test_list_product_table_with_wrong_shape(mult):
    with pytest.raises(FormatoInvalido):
        build_algebra_raw(["0", "1"], [("0", "1")], mult, "1")


def test_not_a_lattice_witness():
    """Dos minimales sin ínfimo."""
    with pytest.raises(NotALattice) as info:
        build_algebra_raw(
            ["x", "y", "t"],
            [("x", "t"), ("y", "t")],
            [["x", "x", "x"], ["y", "y", "y"], ["x", "y", "t"]],
            "t",
        )
    assert set(info.value.testigo) == {"x", "y"}


def test_not_residuated_when_bottom_does_not_absorb():
    """2·0 = 2 deja a 2\\0 sin máximo."""
    leq = [[x <= y for y in range(3)] for x in range(3)]
    mult = [[0, 0, 2], [0, 1, 2], [2, 2, 2]]
    with pytest.raises(NotResiduated) as info:
        FinResLat.desde_tablas(["0", "u", "2"], leq, mult, 1)
    assert info.value.testigo == ("2", "0")


def test_supplied_residual_must_match():
    A = sugihara(3)
    malo = [list(fila) for fila in A.ld]
    malo[0][0] = A.unit
    with pytest.raises(NotResiduated):
        FinResLat.desde_tablas(A.labels, A.leq, A.mult, A.unit, ld=malo)


def test_find_isomorphism():
    A = sugihara(3)
    B = reorder(renombrar(A, {"b1": "x", "a1": "y"}), ["y", "1", "x"])
    h = find_isomorphism(A, B)
    assert h is not None
    assert is_homomorphism(A, B, [h[x] for x in range(A.n)])
    assert find_isomorphism(sugihara(3), godel(3)) is None


def test_property_flags_sugihara_5():
    flags = property_flags(sugihara(5)).como_dict()
    for clave in ("idempotent", "commutative", "conic", "chain", "distributive", "star_involutive", "rigid", "conjunctive"):
        assert flags[clave], clave
    assert not flags["integral"]


def test_godel_is_integral():
    flags = property_flags(godel(4))
    assert flags.integral and flags.commutative and flags.chain


def test_nucleus_and_blocks(brouwer3):
    assert verify_nucleus(brouwer3)
    uno = brouwer3.unit
    assert set(brouwer3.etiquetas_de(blocks(brouwer3)[uno])) == {"c", "1"}
    assert block_kind(brouwer3, uno) == BROUWERIANO
    assert block_kind(brouwer3, brouwer3.indice("a1")) == TRIVIAL
    assert set(skeleton(brouwer3).labels) == {"b1", "1", "a1"}
    assert gamma(brouwer3, brouwer3.indice("c")) == uno


def test_nucleus_requires_conic():
    P = direct_product(sugihara(3), sugihara(3))
    assert P.es_idempotente and not P.es_conica
    with pytest.raises(NotConic):
        verify_nucleus(P)


def test_sign_of(sug3):
    assert sign_of(sug3, sug3.indice("a1")).sign == "positive"
    assert sign_of(sug3, sug3.indice("b1")).sign == "negative"
    assert sign_of(sug3, sug3.unit).central


def test_subuniverses_of_sugihara_5(sug5):
    """Los subuniversos de una Sugihara impar son los conjuntos simétricos con 1."""
    subuniversos = enumerate_subuniverses(sug5)
    assert len(subuniversos) == 4
    par = sug5.indices(["b2", "a2"])
    assert subuniverse_closure(sug5, [sug5.indice("b2")]) == par | {sug5.unit}
    S = subalgebra(sug5, par)
    assert same_algebra(S, renombrar(sugihara(3), {"b1": "b2", "a1": "a2"}))


def test_direct_product_is_distributive_lattice():
    P = direct_product(godel(2), godel(2))
    assert P.n == 4
    assert not P.es_cadena
    assert is_distributive(P) and is_commutative(P)


@settings(max_examples=60, deadline=None)
@given(codigos_de_cadenas(7))
def test_galois_identities_on_chains(codigo):
    """x ≤ x^{ℓr}, x ≤ x^{rℓ} y x^⋆ = x^ℓ ∧ x^r en toda cadena idempotente."""
    A = cadena_de_codigo(codigo)
    for x in range(A.n):
        assert A.leq[x][inv_r(A, inv_ell(A, x))]
        assert A.leq[x][inv_ell(A, inv_r(A, x))]
        assert star_low(A, x) == A.meet[inv_ell(A, x)][inv_r(A, x)]


def test_no_output_on_success(caplog, sug3):
    with caplog.at_level(logging.WARNING):
        verify_nucleus(sug3)
    assert not caplog.records
