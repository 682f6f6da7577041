"""
biblioteca.py — Álgebras y formaciones en V con nombre
=======================================================
Construcciones parametrizadas (Sugihara impares, Gödel, coronas) y las álgebras
de las figuras de contraejemplos, armadas por capas (cadenas) o por sistemas de
descomposición (cónicas). Referencia en archivos y CLI: "lib:NOMBRE:p1:p2".
"""

import logging
from dataclasses import dataclass
from typing import Callable, Final, Sequence

from reticulos.amalgamas import VFormation
from reticulos.cadenas import (
    DERECHA,
    IZQUIERDA,
    NEGATIVA,
    POSITIVA,
    Layer,
    LayerSeq,
    crown,
    emp_from_layers,
    from_emp,
)
from reticulos.descomposicion import Bloque, build_algebra, sistema
from reticulos.errores import ErrorReticulo, UnknownName
from reticulos.nucleo import FinResLat

LOGGER: Final = logging.getLogger(__name__)

PREFIJO_REFERENCIA = "lib:"


# ============================================================
# Construcciones parametrizadas
# ============================================================

def _por_capas(*capas: Layer) -> FinResLat:
    return from_emp(emp_from_layers(LayerSeq(tuple(capas))))


def _neg(etiqueta: str) -> Layer:
    return Layer(NEGATIVA, negative=etiqueta)


def _pos(etiqueta: str) -> Layer:
    return Layer(POSITIVA, positive=etiqueta)


def _par(tipo: str, positivo: str, negativo: str) -> Layer:
    return Layer(tipo, positivo, negativo)


def trivial() -> FinResLat:
    return FinResLat.desde_tablas(["1"], [[True]], [[0]], 0)


def sugihara(n: int) -> FinResLat:
    """Cadena de Sugihara impar b1 < … < bk < 1 < ak < … < a1 (n = 2k + 1)."""
    if n < 1 or n % 2 == 0:
        raise ErrorReticulo(f"sugihara(n) necesita n impar positivo (pedido: {n})", (n,))
    k = n // 2
    capas = []
    for i in range(1, k + 1):
        capas += [_neg(f"b{i}"), _pos(f"a{i}")]
    return _por_capas(*capas)


def godel(n: int) -> FinResLat:
    """Cadena de Gödel de n elementos: b1 < … < b(n-1) < 1, producto = ínfimo."""
    if n < 1:
        raise ErrorReticulo(f"godel(n) necesita n ≥ 1 (pedido: {n})", (n,))
    return _por_capas(*(_neg(f"b{i}") for i in range(1, n)))


def noncomm_sugihara(k: int, J: Sequence[int] = ()) -> FinResLat:
    """Análogo no conmutativo: la corona con k pares, de tipo L en J y R en el resto."""
    return crown(k, J)


def sugihara3_brouwer() -> FinResLat:
    """Sugihara de 3 elementos con un bloque brouweriano de 2 elementos debajo de 1."""
    S = sugihara(3)
    return build_algebra(sistema(S, {"1": Bloque.cadena(["c", "1"])}))


# ============================================================
# Figuras: cadenas
# ============================================================

def _ap_fails() -> tuple[FinResLat, FinResLat, FinResLat]:
    B = _por_capas(_neg("b2"), _par(IZQUIERDA, "a3", "b3"))
    C = _por_capas(_neg("b1'"), _par(IZQUIERDA, "a2'", "b2'"), _par(IZQUIERDA, "a3'", "b3'"))
    return trivial(), B, C


def _ap_fails_var() -> tuple[FinResLat, FinResLat, FinResLat]:
    A = _por_capas(_neg("b"), _pos("a"))
    B = _por_capas(_neg("bB'"), _par(DERECHA, "aB", "bB"), _neg("b"), _pos("a"))
    C = _por_capas(_neg("bC'"), _par(IZQUIERDA, "aC", "bC"), _neg("b"), _pos("a"))
    return A, B, C


def _samemon_left() -> FinResLat:
    return _por_capas(
        _neg("b1"), _par(DERECHA, "a2", "b2"), _pos("a3"), _neg("b4"), _par(IZQUIERDA, "a5", "b5")
    )


def _samemon_right() -> FinResLat:
    return _por_capas(
        _neg("b1"), _par(DERECHA, "a2", "b2"), _neg("b3"), _neg("b4"), _par(IZQUIERDA, "a5", "b5")
    )


# ============================================================
# Figuras: cónicas por sistemas de descomposición
# ============================================================

def _esqueleto(*pares: tuple[str, str]) -> FinResLat:
    """Cadena Sugihara con los pares (negativo, positivo) dados de afuera hacia adentro."""
    capas = []
    for negativo, positivo in pares:
        capas += [_neg(negativo), _pos(positivo)]
    return _por_capas(*capas)


def _abanico(tope: str, atomos: Sequence[str]) -> Bloque:
    """Bloque con átomos incomparables debajo del tope (sin ínfimos entre ellos)."""
    return Bloque.desde_coberturas([*atomos, tope], [(x, tope) for x in atomos], tope)


def _ap_fails2_A() -> FinResLat:
    return _esqueleto(("a*", "a"))


def _ap_fails2_B(atomos: int = 2) -> FinResLat:
    S = _esqueleto(("a*", "a"), ("b*", "b"))
    bloques = {
        "a": _abanico("a", [f"b{i}" for i in range(1, atomos + 1)]),
        "b": _abanico("b", [f"b{i}'" for i in range(1, atomos + 1)]),
    }
    return build_algebra(sistema(S, bloques))


def _ap_fails2_C() -> FinResLat:
    S = _esqueleto(("a*", "a"), ("c*", "c"), ("d*", "d"))
    bloques = {
        "a": _abanico("a", ["c1", "c2"]),
        "d": _abanico("d", ["d1", "d2"]),
    }
    return build_algebra(sistema(S, bloques))


# ============================================================
# Registro
# ============================================================

@dataclass(frozen=True)
class Entrada:
    nombre: str
    construir: Callable[..., FinResLat]
    parametros: str
    descripcion: str


_ENTRADAS: tuple[Entrada, ...] = (
    Entrada("trivial", trivial, "", "álgebra de un elemento"),
    Entrada("sugihara", sugihara, "n", "cadena de Sugihara impar de n elementos"),
    Entrada("godel", godel, "n", "cadena de Gödel de n elementos"),
    Entrada("noncomm_sugihara", lambda k, *J: noncomm_sugihara(k, J), "k [j ...]", "Sugihara no conmutativa con pares L en J"),
    Entrada("crown", lambda k, *L: crown(k, L), "k [l ...]", "corona finita P_{k,L}"),
    Entrada("sugihara3_brouwer", sugihara3_brouwer, "", "Sugihara de 3 con bloque brouweriano {c < 1}"),
    Entrada("fig_APfails_A", lambda: _ap_fails()[0], "", "A = {1}"),
    Entrada("fig_APfails_B", lambda: _ap_fails()[1], "", "[-b2, L(a3,b3)]"),
    Entrada("fig_APfails_C", lambda: _ap_fails()[2], "", "[-b1', L(a2',b2'), L(a3',b3')]"),
    Entrada("fig_APfailsVar_A", lambda: _ap_fails_var()[0], "", "A = {b, 1, a}"),
    Entrada("fig_APfailsVar_B", lambda: _ap_fails_var()[1], "", "[-bB', R(aB,bB), -b, +a]"),
    Entrada("fig_APfailsVar_C", lambda: _ap_fails_var()[2], "", "[-bC', L(aC,bC), -b, +a]"),
    Entrada("fig_APfails2_A", _ap_fails2_A, "", "Sugihara de 3: a* < 1 < a"),
    Entrada("fig_APfails2_B", lambda: _ap_fails2_B(2), "", "bloques de 2 átomos en a y en b"),
    Entrada("fig_APfails2_C", _ap_fails2_C, "", "bloques de 2 átomos en a (sobre c) y en d"),
    Entrada("fig_APfails3_A", _ap_fails2_A, "", "Sugihara de 3: a* < 1 < a"),
    Entrada("fig_APfails3_B", lambda: _ap_fails2_B(3), "", "bloques M3 en a y en b"),
    Entrada("fig_APfails3_C", _ap_fails2_C, "", "como fig_APfails2_C"),
    Entrada("fig_samemon_left", _samemon_left, "", "[-b1, R(a2,b2), +a3, -b4, L(a5,b5)]"),
    Entrada("fig_samemon_right", _samemon_right, "", "[-b1, R(a2,b2), -b3, -b4, L(a5,b5)]"),
    Entrada("fig_connectedcomponents_A", _samemon_left, "", "componente izquierda (como fig_samemon_left)"),
    Entrada("fig_connectedcomponents_C", _samemon_right, "", "componente derecha (como fig_samemon_right)"),
)

ENTRADAS: Final = {e.nombre: e for e in _ENTRADAS}

# Formaciones en V: nombre → nombres de A, B, C
FORMACIONES: Final = {
    "fig_APfails": ("fig_APfails_A", "fig_APfails_B", "fig_APfails_C"),
    "fig_APfailsVar": ("fig_APfailsVar_A", "fig_APfailsVar_B", "fig_APfailsVar_C"),
    "fig_APfails2": ("fig_APfails2_A", "fig_APfails2_B", "fig_APfails2_C"),
    "fig_APfails3": ("fig_APfails3_A", "fig_APfails3_B", "fig_APfails3_C"),
}


def nombres() -> list[str]:
    return [e.nombre for e in _ENTRADAS]


def library(name: str, params: Sequence[int] = ()) -> FinResLat:
    """Álgebra con nombre; lanza UnknownName si el nombre no existe."""
    entrada = ENTRADAS.get(name)
    if entrada is None:
        raise UnknownName(f"no hay ninguna álgebra llamada {name!r}", (name,))
    try:
        A = entrada.construir(*params)
    except TypeError as e:
        raise UnknownName(
            f"parámetros inválidos para {name} (se esperan: {entrada.parametros or 'ninguno'})",
            (name, *map(str, params)),
        ) from e
    LOGGER.debug("Biblioteca: %s%s → %d elementos", name, tuple(params), A.n)
    return A


def library_v(name: str) -> VFormation:
    """Formación en V de una figura, con inclusiones por etiqueta."""
    if name not in FORMACIONES:
        raise UnknownName(f"no hay ninguna formación en V llamada {name!r}", (name,))
    A, B, C = (library(parte) for parte in FORMACIONES[name])
    return VFormation.from_inclusions(A, B, C)


def es_referencia(texto: str) -> bool:
    return texto.startswith(PREFIJO_REFERENCIA)


def desde_referencia(texto: str) -> FinResLat:
    """'lib:sugihara:5' → sugihara(5)."""
    partes = texto[len(PREFIJO_REFERENCIA):].split(":")
    nombre, crudos = partes[0], partes[1:]
    try:
        params = [int(p) for p in crudos if p != ""]
    except ValueError as e:
        raise UnknownName(f"parámetros no numéricos en {texto!r}", (texto,)) from e
    return library(nombre, params)
