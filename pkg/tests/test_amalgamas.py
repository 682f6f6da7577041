from dataclasses import replace

import pytest

from reticulos.amalgamas import (
    C_PRIMERO,
    DISTRIBUTIVO,
    AmalgamCert,
    VFormation,
    amalgamate_rigid_conjunctive_conic,
    amalgamate_star_inv_chains,
    block_amalgam,
    es_reducida,
    reduce_vformation,
    testigo_no_conjuntivo,
    testigo_no_rigido,
    verify_amalgam,
)
from reticulos.biblioteca import library, library_v, sugihara, sugihara3_brouwer, trivial
from reticulos.descomposicion import Bloque, build_algebra, extract_system, sistema
from reticulos.enumeracion import enumerate_conic
from reticulos.errores import (
    BlockAmalgamBoundExceeded,
    NotConjunctive,
    NotReduced,
    NotStarInvolutive,
)
from reticulos.nucleo import (
    BROUWERIANO,
    RETICULO,
    FinResLat,
    find_isomorphism,
    is_commutative,
    is_conjunctive,
    is_rigid,
    renombrar,
)


@pytest.fixture
def sugiharas():
    """sugihara(3) ⊆ sugihara(5) por etiquetas, dos veces con pares internos distintos."""
    B = sugihara(5)
    C = renombrar(sugihara(5), {"b2": "c2", "a2": "d2"})
    return VFormation.from_inclusions(sugihara(3), B, C)


def test_star_involutive_chains_amalgam(sugiharas):
    cert = amalgamate_star_inv_chains(sugiharas)
    assert cert.D.n == 7
    assert cert.strong
    informe = verify_amalgam(sugiharas, cert)
    assert informe and informe.datos["fuerte"]
    D = cert.D
    assert D.lt(D.indice("b1"), D.indice("b2"))
    assert D.lt(D.indice("b2"), D.indice("c2"))


def test_merge_order_can_be_swapped(sugiharas):
    D = amalgamate_star_inv_chains(sugiharas, orden=C_PRIMERO).D
    assert D.lt(D.indice("c2"), D.indice("b2"))


def test_trivial_base_amalgam_of_sugiharas():
    V = VFormation.from_inclusions(trivial(), sugihara(3), renombrar(sugihara(3), {"b1": "c", "a1": "d"}))
    cert = amalgamate_star_inv_chains(V)
    assert find_isomorphism(cert.D, sugihara(5)) is not None


def test_chain_amalgam_needs_star_involution():
    V = library_v("fig_APfails")
    with pytest.raises(NotStarInvolutive):
        amalgamate_star_inv_chains(V)
    assert testigo_no_rigido(V.B) and testigo_no_rigido(V.C)


def test_reduce_renames_shared_labels():
    B = sugihara(3)
    C = renombrar(sugihara(3), {"b1": "x", "a1": "y"})
    V = VFormation(trivial(), B, renombrar(C, {"x": "b1", "y": "a1"}), (B.unit,), (C.unit,))
    assert not es_reducida(V)
    with pytest.raises(NotReduced):
        amalgamate_star_inv_chains(V)
    R = reduce_vformation(V)
    assert es_reducida(R)
    assert set(R.C.labels) == {"b1_C", "1", "a1_C"}
    assert amalgamate_star_inv_chains(R).D.n == 5


def test_verify_amalgam_rejects_broken_map(sugiharas):
    cert = amalgamate_star_inv_chains(sugiharas)
    roto = replace(cert, gC=tuple(cert.D.unit for _ in cert.gC))
    assert not verify_amalgam(sugiharas, roto)


def test_non_strong_certificate_is_flagged():
    """Con B = C por etiquetas, las imágenes se cortan fuera de A."""
    A, B = sugihara(3), sugihara(5)
    V = VFormation.from_inclusions(A, B, B)
    identidad = tuple(range(B.n))
    informe = verify_amalgam(V, AmalgamCert(B, identidad, identidad, strong=True))
    assert informe.condiciones_fallidas() == ["fuerte"]
    assert verify_amalgam(V, AmalgamCert(B, identidad, identidad, strong=False))


def test_lattice_block_amalgam_by_completion():
    B_s = Bloque.cadena(["x", "s"])
    C_s = Bloque.cadena(["y", "s"])
    A_s = Bloque.cadena(["s"])
    T = block_amalgam(RETICULO, B_s, C_s, A_s)
    assert T.n == 4 and T.bloque.es_reticulo and T.fuerte
    assert {"x", "y", "s"} <= set(T.labels)


def test_lattice_block_amalgam_from_catalog():
    B_s, C_s, A_s = Bloque.cadena(["x", "s"]), Bloque.cadena(["y", "s"]), Bloque.cadena(["s"])
    T = block_amalgam(RETICULO, B_s, C_s, A_s, size_bound=3)
    assert T.n == 3
    assert set(T.labels) == {"x", "y", "s"}
    with pytest.raises(BlockAmalgamBoundExceeded):
        block_amalgam(RETICULO, B_s, C_s, A_s, size_bound=2)


def test_block_amalgam_returns_side_when_other_is_base():
    B_s, A_s = Bloque.cadena(["x", "s"]), Bloque.cadena(["s"])
    T = block_amalgam(DISTRIBUTIVO, B_s, A_s, A_s)
    assert T.bloque is B_s
    assert T.hB == (0, 1) and T.hC == (1,)


def test_brouwerian_block_amalgam_is_boolean():
    T = block_amalgam(BROUWERIANO, Bloque.cadena(["c", "1"]), Bloque.cadena(["c'", "1"]), Bloque.cadena(["1"]))
    assert T.n == 4 and T.bloque.es_distributivo


def test_brouwerian_chains_over_top_amalgamate():
    B_s = Bloque.cadena(["b2", "b1", "1"])
    C_s = Bloque.cadena(["c2", "c1", "1"])
    T = block_amalgam(BROUWERIANO, B_s, C_s, Bloque.cadena(["1"]))
    assert T.fuerte and T.bloque.es_distributivo
    assert T.n <= B_s.n * C_s.n
    assert {"b2", "b1", "c2", "c1", "1"} <= set(T.labels)


def _cuadrado(atomo: str) -> Bloque:
    """2×2 con fondo z y átomos x y `atomo` bajo a1."""
    return Bloque.desde_coberturas(
        ["z", "x", atomo, "a1"],
        [("z", "x"), ("z", atomo), ("x", "a1"), (atomo, "a1")],
        "a1",
    )


@pytest.fixture
def cuadrados():
    """Dos 2×2 sobre la cadena z < x < a1: sólo tienen amalgamas distributivas no fuertes."""
    return _cuadrado("y"), _cuadrado("w"), Bloque.cadena(["z", "x", "a1"])


def test_distributive_block_amalgam_may_identify_new_elements(cuadrados):
    B_s, C_s, A_s = cuadrados
    T = block_amalgam(DISTRIBUTIVO, B_s, C_s, A_s, size_bound=12)
    assert T.n == 4 and T.bloque.es_distributivo
    assert not T.fuerte
    assert T.hC[C_s.indice("w")] == T.hB[B_s.indice("y")]
    for e in A_s.labels:
        assert T.hB[B_s.indice(e)] == T.hC[C_s.indice(e)]


def test_lattice_block_amalgam_stays_strong(cuadrados):
    B_s, C_s, A_s = cuadrados
    T = block_amalgam(RETICULO, B_s, C_s, A_s)
    assert T.n == 5 and T.fuerte
    assert not T.bloque.es_distributivo


def _sugihara3_con_bloque(bloque: Bloque) -> FinResLat:
    return build_algebra(sistema(sugihara(3), {"a1": bloque}))


def test_rigid_conjunctive_conic_amalgam(brouwer3):
    C = renombrar(brouwer3, {"c": "c'"})
    V = VFormation.from_inclusions(sugihara(3), brouwer3, C)
    cert = amalgamate_rigid_conjunctive_conic(V)
    assert cert.D.n == 6
    assert cert.strong and verify_amalgam(V, cert)
    assert is_commutative(cert.D)


def test_conic_amalgam_with_positive_lattice_blocks():
    B = _sugihara3_con_bloque(Bloque.cadena(["x", "a1"]))
    C = _sugihara3_con_bloque(Bloque.cadena(["y", "a1"]))
    V = VFormation.from_inclusions(sugihara(3), B, C)
    cert = amalgamate_rigid_conjunctive_conic(V)
    assert cert.D.n == 6
    assert cert.strong and verify_amalgam(V, cert)
    assert is_commutative(cert.D)
    assert is_rigid(cert.D) and is_conjunctive(cert.D)


def test_conic_amalgam_with_distributive_blocks(brouwer3):
    V = VFormation.from_inclusions(sugihara(3), brouwer3, renombrar(brouwer3, {"c": "c'"}))
    assert amalgamate_rigid_conjunctive_conic(V, distributive=True).D.n == 6


def test_distributive_conic_amalgam_is_not_strong(cuadrados):
    B_s, C_s, A_s = cuadrados
    B, C = _sugihara3_con_bloque(B_s), _sugihara3_con_bloque(C_s)
    V = VFormation.from_inclusions(_sugihara3_con_bloque(A_s), B, C)

    cert = amalgamate_rigid_conjunctive_conic(V, distributive=True)
    assert cert.D.n == 6
    assert not cert.strong
    informe = verify_amalgam(V, cert)
    assert informe and not informe.datos["fuerte"]
    assert cert.gC[C.indice("w")] == cert.gB[B.indice("y")]
    assert is_commutative(cert.D)

    fuerte = amalgamate_rigid_conjunctive_conic(V)
    assert fuerte.strong and fuerte.D.n == 7


def _rigidas_conjuntivas(max_n: int) -> list[FinResLat]:
    return [
        X
        for n in range(1, max_n + 1)
        for X in enumerate_conic(n)
        if is_rigid(X) and is_conjunctive(X)
    ]


POOL = _rigidas_conjuntivas(4) + [
    sugihara(5),
    sugihara3_brouwer(),
    _sugihara3_con_bloque(Bloque.cadena(["x", "a1"])),
    _sugihara3_con_bloque(_cuadrado("y")),
    build_algebra(sistema(sugihara(5), {"a1": Bloque.cadena(["x1", "a1"]), "a2": Bloque.cadena(["x2", "a2"])})),
]


@pytest.mark.parametrize(
    "i, j",
    [(i, j) for i in range(len(POOL)) for j in range(i, len(POOL))],
)
def test_conic_amalgam_over_trivial_base_pool(i, j):
    B, C = POOL[i], POOL[j]
    V = reduce_vformation(VFormation(trivial(), B, C, (B.unit,), (C.unit,)))
    # dos bloques de 4 elementos bajo 1 pueden necesitar su producto
    cert = amalgamate_rigid_conjunctive_conic(V, block_bound=16)
    assert cert.strong
    assert verify_amalgam(V, cert)
    if is_commutative(B) and is_commutative(C):
        assert is_commutative(cert.D)


def test_pool_has_positive_lattice_blocks():
    def _bloque_positivo_propio(X: FinResLat) -> bool:
        S = extract_system(X)
        return any(
            b.n > 1 and not S.skeleton.leq[s][S.skeleton.unit]
            for s, b in enumerate(S.blocks)
        )

    assert any(_bloque_positivo_propio(X) for X in POOL)


def test_conic_amalgam_needs_conjunctive():
    V = library_v("fig_APfails2")
    with pytest.raises(NotConjunctive):
        amalgamate_rigid_conjunctive_conic(V)
    assert testigo_no_conjuntivo(library("fig_APfails2_B"))
