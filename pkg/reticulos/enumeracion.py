"""
enumeracion.py — Enumeración exhaustiva de cadenas y álgebras cónicas idempotentes
===================================================================================
Cadenas: secuencias de capas realizadas con from_emp.
Álgebras cónicas: esqueleto cuasi-involutivo más un bloque por elemento central,
tomado de los catálogos de semirretículos con tope, retículos y retículos distributivos.
Oráculos: búsqueda bruta sobre tablas de producto, sólo para contrastar tamaños chicos.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Final, Iterator

import networkx as nx

from reticulos.cadenas import (
    IZQUIERDA,
    DERECHA,
    NEGATIVA,
    POSITIVA,
    LayerSeq,
    codigo_capas,
    emp_from_layers,
    from_emp,
    secuencia_valida,
)
from reticulos.config import CATALOGO_MAX, mapear_en_paralelo
from reticulos.congruencias import uno_es_irreducible
from reticulos.descomposicion import Bloque, build_algebra, sistema
from reticulos.errores import ErrorReticulo
from reticulos.nucleo import (
    FinResLat,
    Relacion,
    calcular_inf_sup,
    cubierta_inferior,
    es_central,
    is_quasi_involutive,
)

LOGGER: Final = logging.getLogger(__name__)

CADENAS = "chains"
CONICAS = "conic"
FSI = "fsi"
TIPOS_ENUMERACION = (CADENAS, CONICAS, FSI)

# Orden canónico de los tipos de capa
_TIPOS = (NEGATIVA, POSITIVA, IZQUIERDA, DERECHA)
_TAMANO_CAPA = {NEGATIVA: 1, POSITIVA: 1, IZQUIERDA: 2, DERECHA: 2}


# ============================================================
# Cadenas
# ============================================================

def _codigos(restante: int) -> Iterator[str]:
    if restante == 0:
        yield ""
        return
    for tipo in _TIPOS:
        k = _TAMANO_CAPA[tipo]
        if k <= restante:
            for resto in _codigos(restante - k):
                yield tipo + resto


def layer_sequences(n: int) -> Iterator[str]:
    """Códigos de capas válidos (de abajo hacia arriba) para cadenas de n elementos."""
    if n < 1:
        raise ErrorReticulo("el tamaño debe ser al menos 1", (n,))
    for codigo in _codigos(n - 1):
        if secuencia_valida(codigo):
            yield codigo


def cadena_de_codigo(codigo: str) -> FinResLat:
    return from_emp(emp_from_layers(LayerSeq.desde_codigo(codigo)))


def enumerate_chains(n: int) -> Iterator[FinResLat]:
    """Todas las cadenas residuadas idempotentes de n elementos, una por clase de isomorfismo."""
    for codigo in layer_sequences(n):
        yield cadena_de_codigo(codigo)


def contar_cadenas(n: int) -> int:
    return sum(1 for _ in layer_sequences(n))


def cadenas_cuasi_involutivas(m: int) -> list[FinResLat]:
    return [S for S in enumerate_chains(m) if is_quasi_involutive(S)]


@dataclass(frozen=True)
class CadenaRapida:
    """
    Cadena idempotente dada por su código de capas, sin tablas: sólo ℓ y r sobre
    las posiciones 0..n-1 de la cadena. Las etiquetas coinciden con las de
    `cadena_de_codigo`, cuyos índices también son las posiciones.
    """
    codigo: str
    etiquetas: tuple[str, ...]
    unidad: int
    ell: tuple[int, ...]
    r: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.etiquetas)

    def gamma(self, x: int) -> int:
        return min(self.r[self.ell[x]], self.ell[self.r[x]])

    def es_central(self, x: int) -> bool:
        return self.ell[x] == self.r[x]

    @cached_property
    def es_cuasi_involutiva(self) -> bool:
        return all(self.gamma(x) == x for x in range(self.n))

    def algebra(self) -> FinResLat:
        return cadena_de_codigo(self.codigo)


def cadena_rapida(codigo: str) -> CadenaRapida:
    """ℓ y r por las reglas de capas: central ℓ = r = ⋆; par L: a^ℓ = b, b^r = a; par R: a^r = b, b^ℓ = a."""
    if not secuencia_valida(codigo):
        raise ErrorReticulo(f"código de capas inválido: {codigo!r}", (codigo,))
    negativos = [i for i, tipo in enumerate(codigo) if tipo != POSITIVA]
    positivos = [i for i, tipo in enumerate(codigo) if tipo != NEGATIVA]
    orden = [(i, NEGATIVA) for i in negativos] + [(len(codigo), "1")] + [(i, POSITIVA) for i in reversed(positivos)]
    etiquetas = tuple(
        "1" if signo == "1" else (f"b{i + 1}" if signo == NEGATIVA else f"a{i + 1}")
        for i, signo in orden
    )
    unidad = len(negativos)
    negativo_de = {i: k for k, (i, signo) in enumerate(orden) if signo == NEGATIVA}
    positivo_de = {i: k for k, (i, signo) in enumerate(orden) if signo == POSITIVA}

    def _estrella(i: int, signo: str) -> int:
        if signo == NEGATIVA:
            arriba = [j for j in positivos if j > i]
            return positivo_de[min(arriba)] if arriba else unidad
        return negativo_de[max(j for j in negativos if j < i)]

    ell, r = [], []
    for i, signo in orden:
        if signo == "1":
            ell.append(unidad)
            r.append(unidad)
            continue
        tipo, estrella = codigo[i], _estrella(i, signo)
        if tipo == IZQUIERDA:
            par = (negativo_de[i], estrella) if signo == POSITIVA else (estrella, positivo_de[i])
        elif tipo == DERECHA:
            par = (estrella, negativo_de[i]) if signo == POSITIVA else (positivo_de[i], estrella)
        else:
            par = (estrella, estrella)
        ell.append(par[0])
        r.append(par[1])
    return CadenaRapida(codigo, etiquetas, unidad, tuple(ell), tuple(r))


def esqueletos_posibles(m: int) -> Iterator[CadenaRapida]:
    """Cadenas cuasi-involutivas de m elementos, en el orden de `layer_sequences`."""
    for codigo in layer_sequences(m):
        cadena = cadena_rapida(codigo)
        if cadena.es_cuasi_involutiva:
            yield cadena


# ============================================================
# Catálogos de bloques
# ============================================================
# Un bloque del catálogo es una relación de orden con el tope en el índice 0.

def _clave(leq: Relacion) -> nx.DiGraph:
    n = len(leq)
    grafo = nx.DiGraph()
    grafo.add_nodes_from(range(n))
    grafo.add_edges_from((x, y) for x in range(n) for y in range(n) if x != y and leq[x][y])
    return grafo


def _sin_isomorfos(ordenes: list[Relacion]) -> tuple[Relacion, ...]:
    """Un representante por clase de isomorfismo (hash WL y luego is_isomorphic)."""
    por_hash: dict[str, list[nx.DiGraph]] = {}
    elegidos = []
    for leq in ordenes:
        grafo = _clave(leq)
        h = nx.weisfeiler_lehman_graph_hash(grafo)
        candidatos = por_hash.setdefault(h, [])
        if any(nx.is_isomorphic(grafo, otro) for otro in candidatos):
            continue
        candidatos.append(grafo)
        elegidos.append(leq)
    return tuple(elegidos)


def _tiene_supremos(leq: Relacion, arriba: frozenset[int]) -> bool:
    """Al agregar un minimal con filtro estricto `arriba`, cada x ∨ y debe existir."""
    n = len(leq)
    for y in range(n):
        comunes = [z for z in arriba if leq[y][z]]
        if not any(all(leq[c][d] for d in comunes) for c in comunes):
            return False
    return True


def _filtros(leq: Relacion) -> Iterator[frozenset[int]]:
    n = len(leq)
    for k in range(1, n + 1):
        for conjunto in itertools.combinations(range(n), k):
            arriba = frozenset(conjunto)
            if all(y in arriba for x in arriba for y in range(n) if leq[x][y]):
                yield arriba


@lru_cache(maxsize=None)
def catalogo_prerreticulos(k: int) -> tuple[Relacion, ...]:
    """Semirretículos superiores con tope de k elementos, salvo isomorfismo."""
    if k < 1 or k > CATALOGO_MAX:
        raise ErrorReticulo(f"el catálogo de bloques llega hasta {CATALOGO_MAX} elementos", (k,))
    if k == 1:
        return (((True,),),)
    nuevos = []
    for leq in catalogo_prerreticulos(k - 1):
        for arriba in _filtros(leq):
            if not _tiene_supremos(leq, arriba):
                continue
            filas = [list(fila) + [False] for fila in leq]
            filas.append([x in arriba for x in range(k - 1)] + [True])
            nuevos.append(tuple(tuple(f) for f in filas))
    catalogo = _sin_isomorfos(nuevos)
    LOGGER.debug("Catálogo de prerretículos de %d elementos: %d", k, len(catalogo))
    return catalogo


@lru_cache(maxsize=None)
def catalogo_reticulos(k: int) -> tuple[Relacion, ...]:
    """Retículos de k elementos: un semirretículo con tope de k-1 elementos más un mínimo."""
    if k == 1:
        return catalogo_prerreticulos(1)
    resultado = []
    for leq in catalogo_prerreticulos(k - 1):
        filas = [list(fila) + [False] for fila in leq]
        filas.append([True] * k)
        resultado.append(tuple(tuple(f) for f in filas))
    return tuple(resultado)


@lru_cache(maxsize=None)
def catalogo_distributivos(k: int) -> tuple[Relacion, ...]:
    """Retículos distributivos (bloques brouwerianos) de k elementos."""
    return tuple(leq for leq in catalogo_reticulos(k) if _bloque(leq, "x").es_distributivo)


def catalogo_cadenas(k: int) -> tuple[Relacion, ...]:
    return (tuple(tuple(x >= y for y in range(k)) for x in range(k)),)


def _bloque(leq: Relacion, tope: str) -> Bloque:
    etiquetas = (tope,) + tuple(f"{tope}_{j}" for j in range(1, len(leq)))
    return Bloque(etiquetas, leq, 0)


# ============================================================
# Álgebras cónicas
# ============================================================

def _composiciones(total: int, partes: int) -> Iterator[tuple[int, ...]]:
    if partes == 0:
        if total == 0:
            yield ()
        return
    for primero in range(total + 1):
        for resto in _composiciones(total - primero, partes - 1):
            yield (primero,) + resto


def _catalogo_para(S: FinResLat, s: int, k: int) -> tuple[Relacion, ...]:
    if S.leq[s][S.unit]:
        return catalogo_distributivos(k)
    if cubierta_inferior(S, s) is None:
        return catalogo_reticulos(k)
    return catalogo_prerreticulos(k)


def _conicas_sobre(tarea: tuple[FinResLat, int]) -> list[FinResLat]:
    S, extra = tarea
    centrales = [s for s in S.orden_lineal if es_central(S, s)]
    resultado = []
    for reparto in _composiciones(extra, len(centrales)):
        opciones = [_catalogo_para(S, s, k + 1) for s, k in zip(centrales, reparto)]
        for eleccion in itertools.product(*opciones):
            bloques = {
                S.labels[s]: _bloque(leq, S.labels[s])
                for s, leq in zip(centrales, eleccion)
                if len(leq) > 1
            }
            resultado.append(build_algebra(sistema(S, bloques)))
    return resultado


def enumerate_conic(n: int) -> Iterator[FinResLat]:
    """Álgebras cónicas idempotentes de n elementos, una por clase de isomorfismo."""
    if n < 1:
        raise ErrorReticulo("el tamaño debe ser al menos 1", (n,))
    tareas = [(S, n - m) for m in range(1, n + 1) for S in cadenas_cuasi_involutivas(m)]
    for lote in mapear_en_paralelo(_conicas_sobre, tareas):
        yield from lote


def enumerate_semiconic_fsi(n: int) -> Iterator[FinResLat]:
    """Las FSI semicónicas idempotentes son cónicas: se filtra la ∨-irreducibilidad de 1."""
    for A in enumerate_conic(n):
        if uno_es_irreducible(A):
            yield A


def enumerar(tipo: str, n: int) -> Iterator[FinResLat]:
    if tipo == CADENAS:
        return enumerate_chains(n)
    if tipo == CONICAS:
        return enumerate_conic(n)
    if tipo == FSI:
        return enumerate_semiconic_fsi(n)
    raise ErrorReticulo(f"tipo de enumeración desconocido: {tipo}", (tipo,))


# ============================================================
# Formas canónicas
# ============================================================

@dataclass(frozen=True, order=True)
class CanonicalForm:
    codigo: bytes


def _codificar(A: FinResLat, permutacion: tuple[int, ...]) -> bytes:
    posicion = {x: i for i, x in enumerate(permutacion)}
    partes = [bytes([posicion[A.unit]])]
    for x in permutacion:
        partes.append(bytes(A.leq[x][y] for y in permutacion))
        partes.append(bytes(posicion[A.mult[x][y]] for y in permutacion))
    return b"".join(partes)


def canonical_form(A: FinResLat) -> CanonicalForm:
    """Cadenas: su código de capas. En general: mínimo sobre las extensiones lineales del orden."""
    if A.es_cadena and A.es_idempotente:
        return CanonicalForm(b"C:" + codigo_capas(A).encode("ascii"))
    grafo = _clave(A.leq)
    minimo = min(_codificar(A, tuple(orden)) for orden in nx.all_topological_sorts(grafo))
    return CanonicalForm(b"G:" + minimo)


# ============================================================
# Oráculos por tablas
# ============================================================

def _tablas_idempotentes(leq: Relacion, join, unidad: int, fondo: int) -> Iterator[list[list[int]]]:
    """Productos idempotentes con unidad, ⊥ absorbente y distributivos sobre ∨ en cada lado."""
    n = len(leq)
    tabla = [[-1] * n for _ in range(n)]
    for x in range(n):
        tabla[x][x] = x
        tabla[unidad][x] = tabla[x][unidad] = x
        tabla[fondo][x] = tabla[x][fondo] = fondo
    libres = [(x, y) for x in range(n) for y in range(n) if tabla[x][y] < 0]

    def _consistente(x: int, y: int) -> bool:
        v = tabla[x][y]
        for z in range(n):
            w = tabla[x][z]
            if w >= 0:
                j = tabla[x][join[y][z]]
                if j >= 0 and j != join[v][w]:
                    return False
                if leq[y][z] and not leq[v][w]:
                    return False
                if leq[z][y] and not leq[w][v]:
                    return False
            w = tabla[z][y]
            if w >= 0:
                j = tabla[join[x][z]][y]
                if j >= 0 and j != join[v][w]:
                    return False
                if leq[x][z] and not leq[v][w]:
                    return False
                if leq[z][x] and not leq[w][v]:
                    return False
        return True

    def _asociativa() -> bool:
        return all(
            tabla[tabla[x][y]][z] == tabla[x][tabla[y][z]]
            for x, y, z in itertools.product(range(n), repeat=3)
        )

    def _llenar(i: int) -> Iterator[list[list[int]]]:
        if i == len(libres):
            if _asociativa():
                yield [fila[:] for fila in tabla]
            return
        x, y = libres[i]
        for v in range(n):
            tabla[x][y] = v
            if _consistente(x, y):
                yield from _llenar(i + 1)
        tabla[x][y] = -1

    yield from _llenar(0)


def _algebras_oraculo(leq: Relacion, etiquetas: tuple[str, ...], solo_conicas: bool) -> Iterator[FinResLat]:
    _, join = calcular_inf_sup(leq, etiquetas)
    n = len(leq)
    fondo = next(x for x in range(n) if all(leq[x]))
    for unidad in range(n):
        if solo_conicas and not all(leq[x][unidad] or leq[unidad][x] for x in range(n)):
            continue
        for tabla in _tablas_idempotentes(leq, join, unidad, fondo):
            try:
                yield FinResLat.desde_tablas(etiquetas, leq, tabla, unidad)
            except ErrorReticulo:
                continue


def cadenas_oraculo(n: int) -> list[FinResLat]:
    """Cadenas residuadas idempotentes de n elementos por búsqueda bruta sobre tablas."""
    leq = tuple(tuple(x <= y for y in range(n)) for x in range(n))
    etiquetas = tuple(f"e{i}" for i in range(n))
    return list(_algebras_oraculo(leq, etiquetas, solo_conicas=False))


def conicas_oraculo(n: int) -> list[FinResLat]:
    """Álgebras cónicas idempotentes de n elementos por búsqueda bruta, sin isomorfos."""
    vistas: set[CanonicalForm] = set()
    resultado = []
    for leq in catalogo_reticulos(n):
        etiquetas = tuple(f"e{i}" for i in range(n))
        for A in _algebras_oraculo(leq, etiquetas, solo_conicas=True):
            forma = canonical_form(A)
            if forma not in vistas:
                vistas.add(forma)
                resultado.append(A)
    LOGGER.info("Oráculo cónico de tamaño %d: %d álgebras", n, len(resultado))
    return resultado
