"""
fallas.py — Repetición mecánica de los argumentos de falla de amalgamación
===========================================================================
Para cada figura de contraejemplo se comprueban, sobre las álgebras concretas,
los hechos en los que se apoya la deducción (inversos, cubiertas, ínfimos de
bloques, tipos de pares) hasta el paso que produce la contradicción. Después se
corre la búsqueda acotada en las clases correspondientes y se registran las
eliminaciones por razón.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Final

from reticulos.amalgamas import VFormation
from reticulos.biblioteca import library_v
from reticulos.busqueda import CLASE_CADENAS, CLASE_CONICAS, CLASE_FSI, search_amalgam_detallado
from reticulos.cadenas import DERECHA, IZQUIERDA, classify_pair
from reticulos.config import COTA_FALLAS_CADENAS, COTA_FALLAS_CONICAS
from reticulos.congruencias import is_fsi, monolith
from reticulos.errores import Informe, UnknownFigure
from reticulos.nucleo import (
    FinResLat,
    cubre,
    inv_ell,
    inv_r,
    is_conjunctive,
    is_quasi_involutive,
    is_rigid,
    star_low,
)

LOGGER: Final = logging.getLogger(__name__)


@dataclass(frozen=True)
class Paso:
    nombre: str
    descripcion: str
    ok: bool
    testigo: tuple[str, ...] = ()


@dataclass(frozen=True)
class Figura:
    formacion: str
    clases: tuple[str, ...]
    one_sided: bool
    contradiccion: str
    cota: int
    pasos: Callable[[VFormation], list[Paso]] = field(repr=False)


class _Vista:
    """Acceso por etiquetas a un álgebra de la figura."""

    def __init__(self, X: FinResLat):
        self.X = X

    def __getitem__(self, etiqueta: str) -> int:
        return self.X.indice(etiqueta)

    @property
    def uno(self) -> int:
        return self.X.unit

    def cubiertas_de_uno(self) -> list[int]:
        return [y for y in range(self.X.n) if cubre(self.X, self.X.unit, y)]

    def ell(self, e: str) -> int:
        return inv_ell(self.X, self[e])

    def r(self, e: str) -> int:
        return inv_r(self.X, self[e])

    def inf(self, *etiquetas: str) -> int:
        resultado = self[etiquetas[0]]
        for e in etiquetas[1:]:
            resultado = self.X.meet[resultado][self[e]]
        return resultado

    def sup(self, *etiquetas: str) -> int:
        resultado = self[etiquetas[0]]
        for e in etiquetas[1:]:
            resultado = self.X.join[resultado][self[e]]
        return resultado


# ============================================================
# Argumentos por figura
# ============================================================

def _pasos_ap_fails(V: VFormation) -> list[Paso]:
    B, C = _Vista(V.B), _Vista(V.C)
    return [
        Paso("b3^ℓ = 1", "en B, y por lo tanto en D", B.ell("b3") == B.uno, ("b3",)),
        Paso(
            "a3 cubre 1",
            "b3^ℓ = 1 con (a3, b3) par L fuerza a3 como cubierta superior de 1",
            classify_pair(V.B, B["a3"], B["b3"]) == IZQUIERDA and cubre(V.B, B.uno, B["a3"]),
            ("a3",),
        ),
        Paso("(b3')^ℓ = 1", "en C, y por lo tanto en D", C.ell("b3'") == C.uno, ("b3'",)),
        Paso(
            "a3' cubre 1",
            "mismo argumento en C",
            classify_pair(V.C, C["a3'"], C["b3'"]) == IZQUIERDA and cubre(V.C, C.uno, C["a3'"]),
            ("a3'",),
        ),
        Paso(
            "a3 = a3'",
            "a3 y a3' son la única cubierta superior de 1 en B y en C; en la cadena D coinciden",
            B.cubiertas_de_uno() == [B["a3"]] and C.cubiertas_de_uno() == [C["a3'"]],
            ("a3", "a3'"),
        ),
        Paso(
            "b2 = b2'",
            "b2 = a3^r = (a3')^r = b2'",
            B.r("a3") == B["b2"] and C.r("a3'") == C["b2'"],
            ("b2", "b2'"),
        ),
        Paso(
            "a'_2 = a'_3",
            "a2' = (b2')^r = b2^r = a3 = a3', pero en C son distintos",
            C.r("b2'") == C["a2'"] and B.r("b2") == B["a3"] and V.C.lt(C["a3'"], C["a2'"]),
            ("a2'", "a3'"),
        ),
    ]


def _pasos_ap_fails_var(V: VFormation) -> list[Paso]:
    A, B, C = V.A, _Vista(V.B), _Vista(V.C)
    theta = monolith(V.B)
    clase_uno = () if theta is None else V.B.etiquetas_de(theta.clase_de(V.B.unit))
    return [
        Paso(
            "monolito",
            "B es subdirectamente irreducible y la clase de 1 de su monolito es A: toda 1-amalgama es amalgama",
            theta is not None and set(clase_uno) == set(A.labels),
            tuple(sorted(clase_uno)),
        ),
        Paso(
            "b_B^⋆ = a y b_C^⋆ = a",
            "estrellas calculadas en B y en C",
            star_low(V.B, B["bB"]) == B["a"] and star_low(V.C, C["bC"]) == C["a"],
            ("bB", "bC", "a"),
        ),
        Paso(
            "a_B y a_C cubren a",
            "en una cadena D ambos son la cubierta superior de a",
            cubre(V.B, B["a"], B["aB"]) and cubre(V.C, C["a"], C["aC"]),
            ("aB", "aC"),
        ),
        Paso(
            "a_B = a_C",
            "pero (a_B, b_B) es un par R y (a_C, b_C) un par L",
            classify_pair(V.B, B["aB"], B["bB"]) == DERECHA
            and classify_pair(V.C, C["aC"], C["bC"]) == IZQUIERDA,
            ("aB", "aC"),
        ),
        Paso(
            "esqueleto",
            "A, B y C son FSI y cuasi-involutivas: sus imágenes caen en el esqueleto de D, que es una cadena",
            all(is_fsi(X) and is_quasi_involutive(X) for X in (V.A, V.B, V.C)),
        ),
    ]


def _pasos_ap_fails2(V: VFormation) -> list[Paso]:
    B, C = _Vista(V.B), _Vista(V.C)
    return [
        Paso(
            "rígidas, no conjuntivas",
            "B y C son rígidas y no conjuntivas",
            is_rigid(V.B) and is_rigid(V.C) and not is_conjunctive(V.B) and not is_conjunctive(V.C),
        ),
        Paso(
            "b y c son inversos",
            "b = (b*)^r y c = (c*)^r, luego cónicos y comparables en D",
            B.r("b*") == B["b"] and C.r("c*") == C["c"],
            ("b", "c"),
        ),
        Paso(
            "b < c imposible",
            "b1 ∧ b2 = b y b1 ∨ b2 = a: b < c daría a ≤ c",
            B.inf("b1", "b2") == B["b"] and B.sup("b1", "b2") == B["a"],
            ("b1", "b2"),
        ),
        Paso(
            "c < b imposible",
            "c1 ∧ c2 = c y c1 ∨ c2 = a: c < b daría a ≤ b",
            C.inf("c1", "c2") == C["c"] and C.sup("c1", "c2") == C["a"],
            ("c1", "c2"),
        ),
        Paso(
            "b = d",
            "dual con b'1, b'2 sobre 1 en B y d1, d2 sobre 1 en C",
            B.inf("b1'", "b2'") == B.uno
            and B.sup("b1'", "b2'") == B["b"]
            and C.inf("d1", "d2") == C.uno
            and C.sup("d1", "d2") == C["d"],
            ("b1'", "b2'", "d1", "d2"),
        ),
        Paso("c=d", "b = c y b = d, pero d < c en C", V.C.lt(C["d"], C["c"]), ("c", "d")),
    ]


def _es_m3(X: _Vista, fondo: int, tope: str, atomos: tuple[str, ...]) -> bool:
    pares = [(x, y) for i, x in enumerate(atomos) for y in atomos[i + 1:]]
    return all(X.inf(x, y) == fondo and X.sup(x, y) == X[tope] for x, y in pares)


def _pasos_ap_fails3(V: VFormation) -> list[Paso]:
    B, C = _Vista(V.B), _Vista(V.C)
    return [
        Paso(
            "FSI rígidas",
            "1 es ∨-irreducible y las tres álgebras son rígidas",
            all(is_fsi(X) and is_rigid(X) for X in (V.A, V.B, V.C)),
        ),
        Paso(
            "[b,a] ≅ M3",
            "la imagen por g_B es un punto o una copia de M3",
            _es_m3(B, B["b"], "a", ("b1", "b2", "b3")),
            ("b1", "b2", "b3"),
        ),
        Paso(
            "c ≤ g(b)",
            "g(b) < c < a contradice la conicidad de c dentro de la copia de M3",
            C.r("c*") == C["c"],
            ("c",),
        ),
        Paso(
            "[1,b] ≅ M3",
            "mismo argumento sobre el intervalo inferior",
            _es_m3(B, B.uno, "b", ("b1'", "b2'", "b3'")),
            ("b1'", "b2'", "b3'"),
        ),
        Paso("g(b) ≤ d", "d es inverso y cónico", C.r("d*") == C["d"], ("d",)),
        Paso("c ≤ d", "c ≤ d en D, pero d < c en C y g_C es inyectiva", V.C.lt(C["d"], C["c"]), ("c", "d")),
    ]


FIGURAS: Final = {
    "APfails": Figura(
        "fig_APfails", (CLASE_CADENAS,), False, "a'_2 = a'_3", COTA_FALLAS_CADENAS, _pasos_ap_fails
    ),
    "APfailsVar": Figura(
        "fig_APfailsVar",
        (CLASE_CADENAS, CLASE_FSI),
        True,
        "a_B = a_C",
        COTA_FALLAS_CADENAS,
        _pasos_ap_fails_var,
    ),
    "APfails2": Figura(
        "fig_APfails2", (CLASE_CONICAS,), False, "c=d", COTA_FALLAS_CONICAS, _pasos_ap_fails2
    ),
    "APfails3": Figura(
        "fig_APfails3", (CLASE_FSI,), True, "c ≤ d", COTA_FALLAS_CONICAS, _pasos_ap_fails3
    ),
}


# ============================================================
# Entrada
# ============================================================

def cota_por_defecto(figura: Figura, V: VFormation) -> int:
    """La cota de la figura, y al menos un elemento más que B y que C."""
    return max(figura.cota, V.B.n + 1, V.C.n + 1)


def check_failure_argument(figure_id: str, cota: int | None = None) -> Informe:
    """
    Repite el argumento de la figura y la búsqueda acotada.

    Returns:
        Informe sin fallos si cada paso se verifica y no aparece ninguna amalgama;
        `datos` guarda 'pasos', 'contradiccion', 'cota' y 'eliminaciones' por clase.
    """
    figura = FIGURAS.get(figure_id)
    if figura is None:
        raise UnknownFigure(
            f"figura desconocida: {figure_id!r} (disponibles: {', '.join(FIGURAS)})",
            (figure_id,),
        )
    V = library_v(figura.formacion)
    cota = cota if cota is not None else cota_por_defecto(figura, V)
    informe = Informe(f"argumento {figure_id}")

    pasos = figura.pasos(V)
    for paso in pasos:
        if not paso.ok:
            informe.agregar(f"paso:{paso.nombre}", paso.testigo, paso.descripcion)
        LOGGER.debug("%s: %s → %s", figure_id, paso.nombre, "ok" if paso.ok else "falla")

    eliminaciones = {}
    completa = True
    for clase in figura.clases:
        resultado = search_amalgam_detallado(V, clase, cota, figura.one_sided)
        eliminaciones[clase] = resultado.eliminados
        completa = completa and resultado.completa
        if resultado.encontrada:
            D = resultado.certificado.D
            informe.agregar(f"busqueda:{clase}", D.labels, f"apareció una amalgama de {D.n} elementos")

    informe.datos.update(
        pasos=pasos,
        contradiccion=figura.contradiccion,
        cota=cota,
        eliminaciones=eliminaciones,
        completa=completa,
    )
    LOGGER.info(
        "Argumento %s: %d pasos, contradicción en %r, búsqueda hasta %d %s",
        figure_id, len(pasos), figura.contradiccion, cota, "completa" if completa else "parcial",
    )
    return informe
