"""
amalgamas.py — Formaciones en V, certificados de amalgama y construcciones de amalgamas fuertes
================================================================================================
Dos construcciones certificadas:
  - cadenas ⋆-involutivas: se fusionan las cadenas de índices de las descomposiciones
    en coronas y se toma la suma anidada;
  - cónicas rígidas y conjuntivas: amalgama de esqueletos más amalgama bloque a bloque
    (brouweriana para los bloques negativos, reticular para los positivos);
    la variante distributiva admite amalgamas no fuertes de los bloques positivos.
Todo resultado pasa por `verify_amalgam` antes de devolverse.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Final, Iterator

import networkx as nx

from reticulos.cadenas import crown_decomposition, nested_sum
from reticulos.config import CATALOGO_MAX, COTA_BLOQUES
from reticulos.descomposicion import Bloque, build_algebra, extract_system, sistema
from reticulos.enumeracion import _bloque, catalogo_distributivos, catalogo_reticulos
from reticulos.errores import (
    BlockAmalgamBoundExceeded,
    ErrorReticulo,
    InconsistenciaInterna,
    Informe,
    NotConjunctive,
    NotReduced,
    NotRigid,
    NotStarInvolutive,
)
from reticulos.nucleo import (
    BROUWERIANO,
    RETICULO,
    FinResLat,
    _exigir_conica_idempotente,
    exigir_cadena_idempotente,
    gamma,
    inv_ell,
    inv_r,
    is_conjunctive,
    is_homomorphism,
    is_rigid,
    is_star_involutive,
    renombrar,
    star_low,
)

LOGGER: Final = logging.getLogger(__name__)

DISTRIBUTIVO = "distributive_lattice"
TIPOS_BLOQUE = (RETICULO, BROUWERIANO, DISTRIBUTIVO)

B_PRIMERO = "B_primero"
C_PRIMERO = "C_primero"


# ============================================================
# Formaciones en V y certificados
# ============================================================

@dataclass(frozen=True)
class VFormation:
    """A con incrustaciones fB: A → B y fC: A → C, dadas como listas de índices."""
    A: FinResLat
    B: FinResLat
    C: FinResLat
    fB: tuple[int, ...]
    fC: tuple[int, ...]

    @classmethod
    def from_inclusions(cls, A: FinResLat, B: FinResLat, C: FinResLat) -> "VFormation":
        """Incrustaciones por etiquetas: cada elemento de A va al de igual etiqueta en B y en C."""
        V = cls(
            A,
            B,
            C,
            tuple(B.indice(e) for e in A.labels),
            tuple(C.indice(e) for e in A.labels),
        )
        verificar_vformacion(V).exigir()
        return V


@dataclass(frozen=True)
class AmalgamCert:
    D: FinResLat
    gB: tuple[int, ...]
    gC: tuple[int, ...]
    strong: bool


def _es_inyectiva(h: tuple[int, ...]) -> bool:
    return len(set(h)) == len(h)


def _copiar_fallos(destino: Informe, origen: Informe, prefijo: str) -> None:
    for fallo in origen.fallos:
        destino.agregar(f"{prefijo}:{fallo.condicion}", fallo.testigo, fallo.detalle)


def verificar_vformacion(V: VFormation) -> Informe:
    informe = Informe("formación en V")
    for nombre, X, f in (("fB", V.B, V.fB), ("fC", V.C, V.fC)):
        _copiar_fallos(informe, is_homomorphism(V.A, X, f, nombre), nombre)
        if not _es_inyectiva(f):
            informe.agregar(f"{nombre}:inyectiva", V.A.labels)
    return informe


def es_reducida(V: VFormation) -> bool:
    """A es subálgebra literal de B y de C (inclusiones por etiqueta) y B ∩ C = A."""
    por_etiqueta = all(
        V.B.labels[V.fB[a]] == e and V.C.labels[V.fC[a]] == e for a, e in enumerate(V.A.labels)
    )
    return por_etiqueta and set(V.B.labels) & set(V.C.labels) == set(V.A.labels)


def _exigir_reducida(V: VFormation, operacion: str) -> None:
    if es_reducida(V):
        return
    comunes = sorted((set(V.B.labels) & set(V.C.labels)) - set(V.A.labels))
    raise NotReduced(f"{operacion} requiere una formación en V reducida", tuple(comunes))


def _etiqueta_libre(base: str, sufijo: str, ocupadas: set[str]) -> str:
    etiqueta = base
    while etiqueta in ocupadas:
        etiqueta += sufijo
    return etiqueta


def reduce_vformation(V: VFormation) -> VFormation:
    """
    Renombra B y C para que A sea su subálgebra común literal: las imágenes de A
    toman las etiquetas de A y las demás etiquetas se desambiguan con sufijos.
    """
    if es_reducida(V):
        return V
    ocupadas = set(V.A.labels)
    nombres_b: dict[str, str] = {}
    imagen_b = {x: a for a, x in enumerate(V.fB)}
    for x, e in enumerate(V.B.labels):
        nuevo = V.A.labels[imagen_b[x]] if x in imagen_b else _etiqueta_libre(e, "_B", ocupadas)
        nombres_b[e] = nuevo
        ocupadas.add(nuevo)
    nombres_c: dict[str, str] = {}
    imagen_c = {x: a for a, x in enumerate(V.fC)}
    for x, e in enumerate(V.C.labels):
        nuevo = V.A.labels[imagen_c[x]] if x in imagen_c else _etiqueta_libre(e, "_C", ocupadas)
        nombres_c[e] = nuevo
        ocupadas.add(nuevo)
    LOGGER.debug("Formación en V reducida: B %s, C %s", nombres_b, nombres_c)
    return VFormation(V.A, renombrar(V.B, nombres_b), renombrar(V.C, nombres_c), V.fB, V.fC)


def _es_fuerte(V: VFormation, gB: tuple[int, ...], gC: tuple[int, ...]) -> bool:
    comun = {gB[V.fB[a]] for a in range(V.A.n)}
    return set(gB) & set(gC) == comun


def verify_amalgam(V: VFormation, cand: AmalgamCert, one_sided: bool = False) -> Informe:
    """
    Comprueba homomorfismos en todas las operaciones, inyectividad (salvo gB en modo
    1-amalgama), conmutación del cuadrado y, si el certificado lo declara, la
    intersección fuerte. `datos["fuerte"]` guarda el valor calculado.
    """
    informe = Informe("1-amalgama" if one_sided else "amalgama")
    _copiar_fallos(informe, is_homomorphism(V.B, cand.D, cand.gB, "gB"), "gB")
    _copiar_fallos(informe, is_homomorphism(V.C, cand.D, cand.gC, "gC"), "gC")
    if not one_sided and not _es_inyectiva(cand.gB):
        informe.agregar("gB:inyectiva", V.B.labels)
    if not _es_inyectiva(cand.gC):
        informe.agregar("gC:inyectiva", V.C.labels)
    if informe.ok:
        for a, etiqueta in enumerate(V.A.labels):
            if cand.gB[V.fB[a]] != cand.gC[V.fC[a]]:
                informe.agregar("conmutación", (etiqueta,))
        fuerte = _es_fuerte(V, cand.gB, cand.gC)
        informe.datos["fuerte"] = fuerte
        if cand.strong and not fuerte:
            extra = (set(cand.gB) & set(cand.gC)) - {cand.gB[V.fB[a]] for a in range(V.A.n)}
            informe.agregar("fuerte", cand.D.etiquetas_de(extra), "las imágenes se cortan fuera de A")
    return informe


def _certificar(V: VFormation, cert: AmalgamCert) -> AmalgamCert:
    informe = verify_amalgam(V, cert)
    if not informe:
        raise InconsistenciaInterna(f"la amalgama construida no certifica: {informe.fallos[0]}")
    return cert


def _certificado_por_etiquetas(V: VFormation, D: FinResLat, strong: bool) -> AmalgamCert:
    gB = tuple(D.indice(e) for e in V.B.labels)
    gC = tuple(D.indice(e) for e in V.C.labels)
    return _certificar(V, AmalgamCert(D, gB, gC, strong))


# ============================================================
# Cadenas ⋆-involutivas
# ============================================================

def _piezas(X: FinResLat) -> list[FinResLat]:
    if X.n == 1:
        return []
    _, sumandos = crown_decomposition(X)
    return sumandos


def _clave_pieza(P: FinResLat) -> frozenset[str]:
    return frozenset(e for i, e in enumerate(P.labels) if i != P.unit)


def _tramos(piezas: list[FinResLat], comunes: frozenset[str]) -> tuple[list[list[FinResLat]], list[FinResLat]]:
    """Parte la lista de coronas en tramos separados por las coronas contenidas en A."""
    tramos: list[list[FinResLat]] = [[]]
    anclas = []
    for P in piezas:
        if _clave_pieza(P) <= comunes:
            anclas.append(P)
            tramos.append([])
        else:
            tramos[-1].append(P)
    return tramos, anclas


def amalgamate_star_inv_chains(V: VFormation, orden: str = B_PRIMERO) -> AmalgamCert:
    """
    Amalgama fuerte de cadenas ⋆-involutivas: las coronas que pasan por A son
    comunes a B y a C; entre dos coronas comunes consecutivas se ubican primero
    las de B y luego las de C (o al revés según `orden`), y D es la suma anidada.
    """
    if orden not in (B_PRIMERO, C_PRIMERO):
        raise ErrorReticulo(f"orden de fusión desconocido: {orden}", (orden,))
    _exigir_reducida(V, "amalgamate_star_inv_chains")
    for nombre, X in (("A", V.A), ("B", V.B), ("C", V.C)):
        exigir_cadena_idempotente(X, "amalgamate_star_inv_chains")
        if not is_star_involutive(X):
            testigo = next(x for x in range(X.n) if star_low(X, star_low(X, x)) != x)
            raise NotStarInvolutive(f"{nombre} no es ⋆-involutiva", (X.labels[testigo],))
    comunes = frozenset(V.A.labels)
    tramos_b, anclas_b = _tramos(_piezas(V.B), comunes)
    tramos_c, anclas_c = _tramos(_piezas(V.C), comunes)
    if [_clave_pieza(P) for P in anclas_b] != [_clave_pieza(P) for P in anclas_c]:
        raise InconsistenciaInterna("las coronas que pasan por A no coinciden en B y en C")

    fusion: list[FinResLat] = []
    for i, (de_b, de_c) in enumerate(zip(tramos_b, tramos_c)):
        fusion.extend(de_b + de_c if orden == B_PRIMERO else de_c + de_b)
        if i < len(anclas_b):
            fusion.append(anclas_b[i])
    D = nested_sum(list(range(len(fusion))), fusion) if fusion else V.A
    LOGGER.info("Amalgama de cadenas: %d coronas, |D| = %d", len(fusion), D.n)
    return _certificado_por_etiquetas(V, D, strong=True)


# ============================================================
# Amalgamas de bloques
# ============================================================

@dataclass(frozen=True)
class AmalgamaBloques:
    """Bloque T con las incrustaciones hB: B_s → T y hC: C_s → T (listas de índices)."""
    bloque: Bloque
    hB: tuple[int, ...]
    hC: tuple[int, ...]
    fuerte: bool

    @property
    def n(self) -> int:
        return self.bloque.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.bloque.labels

    def nombres(self, X: Bloque, h: tuple[int, ...]) -> dict[str, str]:
        """Etiqueta de X → etiqueta de su imagen en T."""
        return {e: self.bloque.labels[h[x]] for x, e in enumerate(X.labels)}


def _es_incrustacion(X: Bloque, T: Bloque, h: tuple[int, ...], implicacion: bool) -> bool:
    """h: X → T inyectiva, tope en tope, preservando orden, ∨, ∧ y, si se pide, ⇒."""
    if not _es_inyectiva(h) or h[X.top] != T.top:
        return False
    tablas = [(X.join, T.join), (X.meet, T.meet)]
    if implicacion:
        if X.implicacion is None or T.implicacion is None:
            return False
        tablas.append((X.implicacion, T.implicacion))
    for x, y in itertools.product(range(X.n), repeat=2):
        if X.leq[x][y] != T.leq[h[x]][h[y]]:
            return False
        for tx, tt in tablas:
            if tx[x][y] is None or h[tx[x][y]] != tt[h[x]][h[y]]:
                return False
    return True


def _admisible(kind: str, T: Bloque) -> bool:
    if not T.es_reticulo:
        return False
    return kind == RETICULO or T.es_distributivo


def _bloque_fuerte(A_s: Bloque, B_s: Bloque, hB: tuple[int, ...], hC: tuple[int, ...]) -> bool:
    return set(hB) & set(hC) == {hB[B_s.indice(e)] for e in A_s.labels}


def _certificar_bloque(
    kind: str,
    T: Bloque,
    B_s: Bloque,
    C_s: Bloque,
    A_s: Bloque,
    hB: tuple[int, ...],
    hC: tuple[int, ...],
) -> AmalgamaBloques | None:
    """Certifica el candidato; los tipos reticular y brouweriano exigen intersección exacta en A_s."""
    implicacion = kind == BROUWERIANO
    if not (
        _admisible(kind, T)
        and _es_incrustacion(B_s, T, hB, implicacion)
        and _es_incrustacion(C_s, T, hC, implicacion)
    ):
        return None
    if any(hB[B_s.indice(e)] != hC[C_s.indice(e)] for e in A_s.labels):
        return None
    fuerte = _bloque_fuerte(A_s, B_s, hB, hC)
    if not fuerte and kind != DISTRIBUTIVO:
        return None
    return AmalgamaBloques(T, hB, hC, fuerte)


def _por_etiquetas(kind: str, T: Bloque, B_s: Bloque, C_s: Bloque, A_s: Bloque) -> AmalgamaBloques | None:
    if not (set(B_s.labels) | set(C_s.labels)) <= set(T.labels):
        return None
    hB = tuple(T.indice(e) for e in B_s.labels)
    hC = tuple(T.indice(e) for e in C_s.labels)
    return _certificar_bloque(kind, T, B_s, C_s, A_s, hB, hC)


def _pushout(B_s: Bloque, C_s: Bloque) -> Bloque:
    """Unión de los dos posets sobre A_s con la clausura transitiva de ambos órdenes."""
    etiquetas = list(B_s.labels) + [e for e in C_s.labels if e not in B_s.labels]
    grafo = nx.DiGraph()
    grafo.add_nodes_from(etiquetas)
    for X in (B_s, C_s):
        grafo.add_edges_from(
            (X.labels[x], X.labels[y])
            for x in range(X.n)
            for y in range(X.n)
            if x != y and X.leq[x][y]
        )
    cierre = nx.transitive_closure(grafo, reflexive=True)
    leq = tuple(tuple(cierre.has_edge(x, y) for y in etiquetas) for x in etiquetas)
    return Bloque(tuple(etiquetas), leq, etiquetas.index(B_s.etiqueta_tope))


def _completar(P: Bloque) -> Bloque:
    """Completación de Dedekind-MacNeille: intersecciones de ideales principales."""
    abajo = [frozenset(y for y in range(P.n) if P.leq[y][x]) for x in range(P.n)]
    cerrados = set(abajo)
    pendientes = list(cerrados)
    while pendientes:
        K = pendientes.pop()
        for L in list(cerrados):
            M = K & L
            if M not in cerrados:
                cerrados.add(M)
                pendientes.append(M)
    elementos = sorted(cerrados, key=lambda K: (-len(K), sorted(K)))
    etiquetas = []
    nuevos = 0
    for K in elementos:
        if K in abajo:
            etiquetas.append(P.labels[abajo.index(K)])
        else:
            nuevos += 1
            etiquetas.append(f"{P.etiqueta_tope}~{nuevos}")
    leq = tuple(tuple(K <= L for L in elementos) for K in elementos)
    return Bloque(tuple(etiquetas), leq, 0)


def _incrustaciones(
    X: Bloque,
    T: Bloque,
    fijos: dict[int, int],
    prohibidos: frozenset[int],
    implicacion: bool,
) -> Iterator[tuple[int, ...]]:
    """
    Incrustaciones de retículos X → T con tope en tope; `fijos` impone imágenes
    y `prohibidos` excluye imágenes para los elementos no fijados.
    """
    tablas = [(X.join, T.join), (X.meet, T.meet)]
    if implicacion:
        tablas.append((X.implicacion, T.implicacion))
    orden = list(reversed(X.orden_lineal))
    h: dict[int, int] = {}

    def _compatible(x: int) -> bool:
        for y in h:
            if X.leq[x][y] != T.leq[h[x]][h[y]] or X.leq[y][x] != T.leq[h[y]][h[x]]:
                return False
            for tx, tt in tablas:
                for u, v in ((x, y), (y, x)):
                    w = tx[u][v]
                    if w in h and h[w] != tt[h[u]][h[v]]:
                        return False
        return True

    def _completa() -> bool:
        return all(
            h[tx[u][v]] == tt[h[u]][h[v]]
            for tx, tt in tablas
            for u in range(X.n)
            for v in range(X.n)
        )

    def _buscar(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(orden):
            if _completa():
                yield tuple(h[x] for x in range(X.n))
            return
        x = orden[i]
        if x in fijos:
            candidatos = [fijos[x]]
        elif x == X.top:
            candidatos = [T.top]
        else:
            candidatos = [t for t in range(T.n) if t not in prohibidos]
        usados = set(h.values())
        for t in candidatos:
            if t in usados:
                continue
            h[x] = t
            if _compatible(x):
                yield from _buscar(i + 1)
            del h[x]

    yield from _buscar(0)


def _catalogo_bloques(kind: str, k: int) -> tuple:
    return catalogo_reticulos(k) if kind == RETICULO else catalogo_distributivos(k)


def _etiquetar(n: int, tope: str, nombres: dict[int, str], ocupadas: set[str]) -> tuple[str, ...]:
    """Etiquetas de B y C donde hay imagen; nombres nuevos tope~j para el resto."""
    etiquetas = []
    j = 0
    for t in range(n):
        if t in nombres:
            etiquetas.append(nombres[t])
            continue
        j += 1
        while f"{tope}~{j}" in ocupadas:
            j += 1
        etiquetas.append(f"{tope}~{j}")
    return tuple(etiquetas)


def _extender(kind: str, leq, B_s: Bloque, C_s: Bloque, A_s: Bloque) -> AmalgamaBloques | None:
    """
    Busca en el bloque de catálogo `leq` copias de B_s y de C_s que coincidan en A_s.
    Salvo en el tipo distributivo, la copia de C_s evita la imagen de B_s fuera de A_s.
    """
    T = _bloque(leq, B_s.etiqueta_tope)
    implicacion = kind == BROUWERIANO
    for hB in _incrustaciones(B_s, T, {}, frozenset(), implicacion):
        fijos = {C_s.indice(e): hB[B_s.indice(e)] for e in A_s.labels}
        prohibidos = frozenset() if kind == DISTRIBUTIVO else frozenset(hB)
        for hC in _incrustaciones(C_s, T, fijos, prohibidos, implicacion):
            # la etiqueta de B prevalece donde las dos imágenes coinciden
            nombres = {t: C_s.labels[x] for x, t in enumerate(hC)}
            nombres.update({t: B_s.labels[x] for x, t in enumerate(hB)})
            etiquetas = _etiquetar(T.n, B_s.etiqueta_tope, nombres, set(B_s.labels) | set(C_s.labels))
            resultado = _certificar_bloque(kind, Bloque(etiquetas, T.leq, T.top), B_s, C_s, A_s, hB, hC)
            if resultado is not None:
                return resultado
    return None


def _producto(B_s: Bloque, C_s: Bloque) -> tuple[Bloque, tuple[int, ...], tuple[int, ...]]:
    """B_s × C_s con x ↦ (x, tope) e y ↦ (tope, y); amalgama fuerte cuando A_s es sólo el tope."""
    pares = list(itertools.product(range(B_s.n), range(C_s.n)))
    indice = {p: k for k, p in enumerate(pares)}
    hB = tuple(indice[(x, C_s.top)] for x in range(B_s.n))
    hC = tuple(indice[(B_s.top, y)] for y in range(C_s.n))
    nombres = {t: C_s.labels[y] for y, t in enumerate(hC)}
    nombres.update({t: B_s.labels[x] for x, t in enumerate(hB)})
    etiquetas = _etiquetar(len(pares), B_s.etiqueta_tope, nombres, set(B_s.labels) | set(C_s.labels))
    leq = tuple(tuple(B_s.leq[x][u] and C_s.leq[y][v] for u, v in pares) for x, y in pares)
    return Bloque(etiquetas, leq, indice[(B_s.top, C_s.top)]), hB, hC


def _exigir_subbloque_comun(A_s: Bloque, X: Bloque, nombre: str) -> None:
    if not set(A_s.labels) <= set(X.labels) or A_s.etiqueta_tope != X.etiqueta_tope:
        raise ErrorReticulo(f"A_s no es un subbloque de {nombre}", A_s.labels)


def block_amalgam(
    kind: str,
    B_s: Bloque,
    C_s: Bloque,
    A_s: Bloque,
    size_bound: int = COTA_BLOQUES,
) -> AmalgamaBloques:
    """
    Amalgama de dos bloques sobre A_s. Candidatos, en orden: el propio B_s o C_s
    cuando el otro es A_s, el pushout de los posets, su completación de
    Dedekind-MacNeille, los retículos del catálogo por tamaño creciente y, si
    A_s es sólo el tope, el producto B_s × C_s. Sólo se devuelve un bloque certificado.

    Args:
        kind: lattice, brouwerian (amalgamas fuertes) o distributive_lattice
            (las imágenes de B_s y C_s pueden cortarse fuera de A_s)
        size_bound: tamaño máximo del bloque buscado

    Returns:
        El bloque con las incrustaciones de B_s y C_s.
    """
    if kind not in TIPOS_BLOQUE:
        raise ErrorReticulo(f"tipo de bloque desconocido: {kind}", (kind,))
    _exigir_subbloque_comun(A_s, B_s, "B_s")
    _exigir_subbloque_comun(A_s, C_s, "C_s")
    for lado, otro in ((B_s, C_s), (C_s, B_s)):
        if set(otro.labels) == set(A_s.labels):
            resultado = _por_etiquetas(kind, lado, B_s, C_s, A_s)
            if resultado is not None:
                return resultado

    P = _pushout(B_s, C_s)
    for T, origen in ((P, "pushout"), (_completar(P), "completación")):
        resultado = _por_etiquetas(kind, T, B_s, C_s, A_s) if T.n <= size_bound else None
        if resultado is not None:
            LOGGER.debug("Amalgama de bloques por %s: %r", origen, T)
            return resultado

    minimo = max(B_s.n, C_s.n) if kind == DISTRIBUTIVO else P.n
    techo = min(size_bound, CATALOGO_MAX)
    for k in range(minimo, techo + 1):
        for leq in _catalogo_bloques(kind, k):
            resultado = _extender(kind, leq, B_s, C_s, A_s)
            if resultado is not None:
                LOGGER.debug(
                    "Amalgama de bloques por catálogo (%d elementos, fuerte=%s): %r",
                    k,
                    resultado.fuerte,
                    resultado.bloque,
                )
                return resultado
    if A_s.n == 1 and B_s.n * C_s.n <= size_bound:
        T, hB, hC = _producto(B_s, C_s)
        resultado = _certificar_bloque(kind, T, B_s, C_s, A_s, hB, hC)
        if resultado is not None:
            LOGGER.debug("Amalgama de bloques por producto: %r", T)
            return resultado
    detalle = "" if size_bound <= CATALOGO_MAX else f" (el catálogo llega hasta {CATALOGO_MAX})"
    raise BlockAmalgamBoundExceeded(
        f"sin amalgama de bloques {kind} hasta {size_bound} elementos{detalle}",
        size_bound,
        (B_s.etiqueta_tope,),
    )


# ============================================================
# Cónicas rígidas y conjuntivas
# ============================================================

def testigo_no_rigido(X: FinResLat) -> tuple[str, ...]:
    for x in range(X.n):
        for inverso in (inv_r(X, x), inv_ell(X, x)):
            if star_low(X, star_low(X, inverso)) != inverso:
                return (X.labels[x], X.labels[inverso])
    return ()


def testigo_no_conjuntivo(X: FinResLat) -> tuple[str, ...]:
    for x, y in itertools.combinations(range(X.n), 2):
        if gamma(X, X.meet[x][y]) != X.meet[gamma(X, x)][gamma(X, y)]:
            return (X.labels[x], X.labels[y])
    return ()


def amalgamate_rigid_conjunctive_conic(
    V: VFormation,
    block_bound: int = COTA_BLOQUES,
    distributive: bool = False,
) -> AmalgamCert:
    """
    Amalgama de esqueletos con `amalgamate_star_inv_chains` y, para cada s del
    esqueleto de D presente en B y en C, amalgama de bloques. B y C entran en D
    por las incrustaciones de cada bloque. Con `distributive` los bloques
    positivos se amalgaman como retículos distributivos y la amalgama puede no
    ser fuerte; el certificado lo indica.
    """
    _exigir_reducida(V, "amalgamate_rigid_conjunctive_conic")
    for nombre, X in (("A", V.A), ("B", V.B), ("C", V.C)):
        _exigir_conica_idempotente(X, "amalgamate_rigid_conjunctive_conic")
        if not is_rigid(X):
            raise NotRigid(f"{nombre} no es rígida", testigo_no_rigido(X))
        if not is_conjunctive(X):
            raise NotConjunctive(f"{nombre} no es conjuntiva", testigo_no_conjuntivo(X))
    DA, DB, DC = extract_system(V.A), extract_system(V.B), extract_system(V.C)
    VS = VFormation.from_inclusions(DA.skeleton, DB.skeleton, DC.skeleton)
    S = amalgamate_star_inv_chains(VS).D

    en_b, en_c = set(DB.skeleton.labels), set(DC.skeleton.labels)
    bloques: dict[str, Bloque] = {}
    nombres_b: dict[str, str] = {}
    nombres_c: dict[str, str] = {}
    for s, etiqueta in enumerate(S.labels):
        if etiqueta in en_b and etiqueta in en_c:
            negativo = S.leq[s][S.unit]
            tipo = BROUWERIANO if negativo else (DISTRIBUTIVO if distributive else RETICULO)
            B_s, C_s = DB.bloque(etiqueta), DC.bloque(etiqueta)
            R = block_amalgam(tipo, B_s, C_s, DA.bloque(etiqueta), block_bound)
            bloques[etiqueta] = R.bloque
            nombres_b.update(R.nombres(B_s, R.hB))
            nombres_c.update(R.nombres(C_s, R.hC))
        elif etiqueta in en_b:
            bloques[etiqueta] = DB.bloque(etiqueta)
        else:
            bloques[etiqueta] = DC.bloque(etiqueta)
    D = build_algebra(sistema(S, bloques))
    gB = tuple(D.indice(nombres_b.get(e, e)) for e in V.B.labels)
    gC = tuple(D.indice(nombres_c.get(e, e)) for e in V.C.labels)
    fuerte = _es_fuerte(V, gB, gC)
    if not fuerte:
        LOGGER.info("Amalgama cónica no fuerte: las imágenes de B y C se cortan fuera de A")
    LOGGER.info("Amalgama cónica: |S| = %d, |D| = %d", S.n, D.n)
    return _certificar(V, AmalgamCert(D, gB, gC, fuerte))
