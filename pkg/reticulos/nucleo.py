"""
nucleo.py — Núcleo: retículos residuados finitos, axiomas y operaciones derivadas
==================================================================================
Los elementos son índices 0..n-1 con etiquetas de texto; el orden, el producto y
los residuos se guardan como tablas densas n×n. Un FinResLat sólo se obtiene
validado, a través de `FinResLat.desde_tablas` o de `build_algebra_raw`.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Final, Iterable, Mapping, Sequence

import networkx as nx

from reticulos.errores import (
    ErrorReticulo,
    FormatoInvalido,
    InconsistenciaInterna,
    Informe,
    NotAChain,
    NotALattice,
    NotAssociative,
    NotConic,
    NotResiduated,
    NucleusViolation,
    UnitFailure,
)

LOGGER: Final = logging.getLogger(__name__)

Tabla = tuple[tuple[int, ...], ...]
Relacion = tuple[tuple[bool, ...], ...]

POSITIVO = "positive"
NEGATIVO = "negative"
AMBOS = "both"

BROUWERIANO = "brouwerian"
RETICULO = "lattice"
PRERRETICULO_PROPIO = "proper_prelattice"
TRIVIAL = "trivial"


# ============================================================
# Helpers de orden
# ============================================================

def _maximo(candidatos: Sequence[int], leq: Relacion) -> int | None:
    """Devuelve el máximo de `candidatos` respecto de `leq`, o None si no existe."""
    for c in candidatos:
        if all(leq[d][c] for d in candidatos):
            return c
    return None


def _minimo(candidatos: Sequence[int], leq: Relacion) -> int | None:
    for c in candidatos:
        if all(leq[c][d] for d in candidatos):
            return c
    return None


def tablas_parciales(leq: Relacion) -> tuple[list[list[int | None]], list[list[int | None]]]:
    """Ínfimos y supremos de cada par; None donde no existen."""
    n = len(leq)
    meet: list[list[int | None]] = [[None] * n for _ in range(n)]
    join: list[list[int | None]] = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            inferiores = [z for z in range(n) if leq[z][x] and leq[z][y]]
            superiores = [z for z in range(n) if leq[x][z] and leq[y][z]]
            meet[x][y] = meet[y][x] = _maximo(inferiores, leq)
            join[x][y] = join[y][x] = _minimo(superiores, leq)
    return meet, join


def calcular_inf_sup(leq: Relacion, etiquetas: Sequence[str]) -> tuple[Tabla, Tabla]:
    """Tablas de ínfimo y supremo; NotALattice con el par testigo si falta alguno."""
    meet, join = tablas_parciales(leq)
    n = len(leq)
    for x in range(n):
        for y in range(x, n):
            if meet[x][y] is None:
                raise NotALattice(
                    f"{etiquetas[x]} y {etiquetas[y]} no tienen ínfimo",
                    (etiquetas[x], etiquetas[y]),
                )
            if join[x][y] is None:
                raise NotALattice(
                    f"{etiquetas[x]} y {etiquetas[y]} no tienen supremo",
                    (etiquetas[x], etiquetas[y]),
                )
    return tuple(map(tuple, meet)), tuple(map(tuple, join))


def verificar_orden_parcial(leq: Relacion, etiquetas: Sequence[str]) -> None:
    n = len(leq)
    for x in range(n):
        if not leq[x][x]:
            raise NotALattice(f"la relación no es reflexiva en {etiquetas[x]}", (etiquetas[x],))
    for x, y in itertools.combinations(range(n), 2):
        if leq[x][y] and leq[y][x]:
            raise NotALattice(
                f"la relación no es antisimétrica en {etiquetas[x]}, {etiquetas[y]}",
                (etiquetas[x], etiquetas[y]),
            )
    for x, y, z in itertools.product(range(n), repeat=3):
        if leq[x][y] and leq[y][z] and not leq[x][z]:
            raise NotALattice(
                "la relación no es transitiva",
                (etiquetas[x], etiquetas[y], etiquetas[z]),
            )


def orden_desde_coberturas(etiquetas: Sequence[str], coberturas: Iterable[tuple[str, str]]) -> Relacion:
    """Clausura reflexivo-transitiva de las coberturas (pares (menor, mayor) por etiqueta)."""
    indice = {e: i for i, e in enumerate(etiquetas)}
    grafo = nx.DiGraph()
    grafo.add_nodes_from(range(len(etiquetas)))
    for menor, mayor in coberturas:
        if menor not in indice or mayor not in indice:
            raise FormatoInvalido(f"cobertura con etiqueta desconocida: ({menor}, {mayor})", (menor, mayor))
        grafo.add_edge(indice[menor], indice[mayor])
    if not nx.is_directed_acyclic_graph(grafo):
        ciclo = nx.find_cycle(grafo)
        raise NotALattice(
            "las coberturas forman un ciclo",
            tuple(etiquetas[a] for a, _ in ciclo),
        )
    cierre = nx.transitive_closure_dag(grafo)
    n = len(etiquetas)
    return tuple(
        tuple(x == y or cierre.has_edge(x, y) for y in range(n))
        for x in range(n)
    )


def coberturas_de(leq: Relacion) -> list[tuple[int, int]]:
    """Pares (x, y) con x ≺ y, en orden de índices."""
    n = len(leq)
    grafo = nx.DiGraph()
    grafo.add_nodes_from(range(n))
    grafo.add_edges_from((x, y) for x in range(n) for y in range(n) if x != y and leq[x][y])
    reducido = nx.transitive_reduction(grafo)
    return sorted(reducido.edges())


# ============================================================
# Verificación de axiomas
# ============================================================

def _verificar_unidad(mult: Tabla, unidad: int, etiquetas: Sequence[str]) -> None:
    for x in range(len(mult)):
        if mult[unidad][x] != x or mult[x][unidad] != x:
            raise UnitFailure(
                f"{etiquetas[unidad]} no es neutro para {etiquetas[x]}",
                (etiquetas[unidad], etiquetas[x]),
            )


def _verificar_asociatividad(mult: Tabla, etiquetas: Sequence[str]) -> None:
    n = len(mult)
    for x, y, z in itertools.product(range(n), repeat=3):
        if mult[mult[x][y]][z] != mult[x][mult[y][z]]:
            raise NotAssociative(
                "el producto no es asociativo",
                (etiquetas[x], etiquetas[y], etiquetas[z]),
            )


def _derivar_residuos(leq: Relacion, mult: Tabla, etiquetas: Sequence[str]) -> tuple[Tabla, Tabla]:
    """x\\z y z/y como máximos finitos; después comprueba la adjunción celda por celda."""
    n = len(mult)
    ld = [[0] * n for _ in range(n)]
    rd = [[0] * n for _ in range(n)]
    for x in range(n):
        for z in range(n):
            maximo = _maximo([y for y in range(n) if leq[mult[x][y]][z]], leq)
            if maximo is None:
                raise NotResiduated(
                    f"no existe {etiquetas[x]}\\{etiquetas[z]}",
                    (etiquetas[x], etiquetas[z]),
                )
            ld[x][z] = maximo
            maximo = _maximo([y for y in range(n) if leq[mult[y][x]][z]], leq)
            if maximo is None:
                raise NotResiduated(
                    f"no existe {etiquetas[z]}/{etiquetas[x]}",
                    (etiquetas[z], etiquetas[x]),
                )
            rd[z][x] = maximo
    for x, y, z in itertools.product(range(n), repeat=3):
        producto = leq[mult[x][y]][z]
        if producto != leq[y][ld[x][z]] or producto != leq[x][rd[z][y]]:
            raise NotResiduated(
                "falla la adjunción",
                (etiquetas[x], etiquetas[y], etiquetas[z]),
            )
    return tuple(map(tuple, ld)), tuple(map(tuple, rd))


def _primera_diferencia(a: Tabla, b: Tabla) -> tuple[int, int] | None:
    for x, (fila_a, fila_b) in enumerate(zip(a, b)):
        for y, (u, v) in enumerate(zip(fila_a, fila_b)):
            if u != v:
                return x, y
    return None


def _como_tabla(valores, n: int, nombre: str) -> Tabla:
    tabla = tuple(tuple(int(v) for v in fila) for fila in valores)
    if len(tabla) != n or any(len(fila) != n for fila in tabla):
        raise FormatoInvalido(f"la tabla {nombre} debe ser de {n}×{n}")
    if any(not 0 <= v < n for fila in tabla for v in fila):
        raise FormatoInvalido(f"la tabla {nombre} tiene valores fuera del universo")
    return tabla


# ============================================================
# FinResLat
# ============================================================

@dataclass(frozen=True, repr=False)
class FinResLat:
    """
    Retículo residuado finito. `ld[x][z]` = x\\z y `rd[z][y]` = z/y.
    No construir directamente: usar `FinResLat.desde_tablas`.
    """
    labels: tuple[str, ...]
    leq: Relacion
    mult: Tabla
    unit: int
    ld: Tabla
    rd: Tabla
    meet: Tabla
    join: Tabla

    @classmethod
    def desde_tablas(
        cls,
        labels: Sequence[str],
        leq: Sequence[Sequence[bool]],
        mult: Sequence[Sequence[int]],
        unit: int,
        ld: Sequence[Sequence[int]] | None = None,
        rd: Sequence[Sequence[int]] | None = None,
    ) -> "FinResLat":
        """
        Valida orden, retículo, unidad, asociatividad y residuación, en ese orden.
        Si se suministran `ld`/`rd`, deben coincidir con los residuos derivados.
        """
        etiquetas = tuple(str(e) for e in labels)
        n = len(etiquetas)
        if n == 0:
            raise FormatoInvalido("el universo no puede ser vacío")
        if len(set(etiquetas)) != n:
            repetidas = sorted({e for e in etiquetas if etiquetas.count(e) > 1})
            raise FormatoInvalido(f"etiquetas repetidas: {repetidas}", tuple(repetidas))
        if not 0 <= unit < n:
            raise FormatoInvalido("la unidad no pertenece al universo")
        orden = tuple(tuple(bool(v) for v in fila) for fila in leq)
        if len(orden) != n or any(len(fila) != n for fila in orden):
            raise FormatoInvalido(f"la relación de orden debe ser de {n}×{n}")
        producto = _como_tabla(mult, n, "de producto")

        verificar_orden_parcial(orden, etiquetas)
        meet, join = calcular_inf_sup(orden, etiquetas)
        _verificar_unidad(producto, unit, etiquetas)
        _verificar_asociatividad(producto, etiquetas)
        ld_derivado, rd_derivado = _derivar_residuos(orden, producto, etiquetas)

        for nombre, dada, derivada in (("\\", ld, ld_derivado), ("/", rd, rd_derivado)):
            if dada is None:
                continue
            celda = _primera_diferencia(_como_tabla(dada, n, nombre), derivada)
            if celda is not None:
                x, y = celda
                raise NotResiduated(
                    f"la tabla {nombre} suministrada no coincide con la derivada",
                    (etiquetas[x], etiquetas[y]),
                )
        return cls(etiquetas, orden, producto, unit, ld_derivado, rd_derivado, meet, join)

    def __repr__(self) -> str:
        return f"FinResLat({', '.join(self.labels)}; unidad={self.labels[self.unit]})"

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _indice_por_etiqueta(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.labels)}

    def indice(self, etiqueta: str) -> int:
        try:
            return self._indice_por_etiqueta[etiqueta]
        except KeyError:
            raise ErrorReticulo(f"etiqueta desconocida: {etiqueta}", (etiqueta,)) from None

    def indices(self, etiquetas: Iterable[str]) -> frozenset[int]:
        return frozenset(self.indice(e) for e in etiquetas)

    def etiquetas_de(self, elementos: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[x] for x in sorted(elementos, key=self.posicion.__getitem__))

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq[x][y]

    @cached_property
    def bottom(self) -> int:
        return next(x for x in range(self.n) if all(self.leq[x]))

    @cached_property
    def top(self) -> int:
        return next(x for x in range(self.n) if all(self.leq[y][x] for y in range(self.n)))

    @cached_property
    def orden_lineal(self) -> tuple[int, ...]:
        """Extensión lineal del orden (para cadenas, el orden de la cadena)."""
        alturas = [sum(self.leq[y][x] for y in range(self.n)) for x in range(self.n)]
        return tuple(sorted(range(self.n), key=lambda x: (alturas[x], x)))

    @cached_property
    def posicion(self) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, x in enumerate(self.orden_lineal):
            pos[x] = i
        return tuple(pos)

    @cached_property
    def es_cadena(self) -> bool:
        return all(self.leq[x][y] or self.leq[y][x] for x in range(self.n) for y in range(self.n))

    @cached_property
    def es_idempotente(self) -> bool:
        return all(self.mult[x][x] == x for x in range(self.n))

    @cached_property
    def es_conica(self) -> bool:
        u = self.unit
        return all(self.leq[x][u] or self.leq[u][x] for x in range(self.n))


def build_algebra_raw(
    elements: Sequence[str],
    covers: Iterable[tuple[str, str]],
    mult: Mapping[str, Mapping[str, str]] | Sequence[Sequence[str]],
    unit: str,
) -> FinResLat:
    """
    Construye un FinResLat desde etiquetas, coberturas y tabla de producto.

    Args:
        elements: etiquetas distintas
        covers: pares (menor, mayor); el orden es su clausura reflexivo-transitiva
        mult: tabla por etiquetas, como dict anidado o como lista de filas
        unit: etiqueta de la unidad

    Returns:
        El álgebra validada, con residuos derivados.
    """
    etiquetas = tuple(elements)
    if len(set(etiquetas)) != len(etiquetas):
        raise FormatoInvalido("etiquetas repetidas", etiquetas)
    indice = {e: i for i, e in enumerate(etiquetas)}
    if unit not in indice:
        raise FormatoInvalido(f"la unidad {unit} no es un elemento", (unit,))
    leq = orden_desde_coberturas(etiquetas, covers)

    def _valor(v) -> int:
        if v not in indice:
            raise FormatoInvalido(f"valor de producto desconocido: {v}", (v,))
        return indice[v]

    if not isinstance(mult, Mapping):
        if len(mult) != len(etiquetas):
            raise FormatoInvalido(
                f"la tabla de producto tiene {len(mult)} filas y hay {len(etiquetas)} elementos", (len(mult),)
            )
        cortas = [etiquetas[i] for i, fila in enumerate(mult) if len(fila) != len(etiquetas)]
        if cortas:
            raise FormatoInvalido("filas del producto con largo distinto al número de elementos", tuple(cortas))

    tabla = []
    for i, x in enumerate(etiquetas):
        if isinstance(mult, Mapping):
            if x not in mult:
                raise FormatoInvalido(f"falta la fila de {x} en el producto", (x,))
            fila = mult[x]
            try:
                tabla.append([_valor(fila[y]) for y in etiquetas])
            except KeyError as exc:
                raise FormatoInvalido(f"falta el producto {x}·{exc.args[0]}", (x, exc.args[0])) from None
        else:
            tabla.append([_valor(v) for v in mult[i]])
    return FinResLat.desde_tablas(etiquetas, leq, tabla, indice[unit])


# ============================================================
# Inversos, estrellas y γ
# ============================================================

def inv_ell(A: FinResLat, x: int) -> int:
    """x^ℓ = 1/x."""
    return A.rd[A.unit][x]


def inv_r(A: FinResLat, x: int) -> int:
    """x^r = x\\1."""
    return A.ld[x][A.unit]


def es_central(A: FinResLat, x: int) -> bool:
    return inv_ell(A, x) == inv_r(A, x)


def _exigir_conica_idempotente(A: FinResLat, operacion: str) -> None:
    if not A.es_idempotente:
        raise NotConic(f"{operacion} requiere un álgebra idempotente")
    if not A.es_conica:
        testigo = next(x for x in range(A.n) if not (A.leq[x][A.unit] or A.leq[A.unit][x]))
        raise NotConic(f"{operacion} requiere un álgebra cónica", (A.labels[testigo],))


def _estrella(A: FinResLat, x: int) -> int:
    return A.meet[inv_ell(A, x)][inv_r(A, x)]


def star_low(A: FinResLat, x: int) -> int:
    """x^⋆ = x^ℓ ∧ x^r."""
    _exigir_conica_idempotente(A, "star_low")
    return _estrella(A, x)


def star_high(A: FinResLat, x: int) -> int:
    """x^* = x^ℓ ∨ x^r."""
    _exigir_conica_idempotente(A, "star_high")
    return A.join[inv_ell(A, x)][inv_r(A, x)]


def partner(A: FinResLat, x: int) -> int:
    """x^↔: x si es central, x^* si no."""
    _exigir_conica_idempotente(A, "partner")
    return x if es_central(A, x) else A.join[inv_ell(A, x)][inv_r(A, x)]


def _gamma(A: FinResLat, x: int) -> int:
    return A.meet[inv_r(A, inv_ell(A, x))][inv_ell(A, inv_r(A, x))]


def gamma(A: FinResLat, x: int) -> int:
    """γ(x) = x^{ℓr} ∧ x^{rℓ}."""
    _exigir_conica_idempotente(A, "gamma")
    return _gamma(A, x)


@dataclass(frozen=True)
class SignedElement:
    element: int
    sign: str
    central: bool


def sign_of(A: FinResLat, x: int) -> SignedElement:
    if x == A.unit:
        return SignedElement(x, AMBOS, True)
    if A.leq[x][A.unit]:
        signo = NEGATIVO
    elif A.leq[A.unit][x]:
        signo = POSITIVO
    else:
        raise NotConic(f"{A.labels[x]} no es comparable con la unidad", (A.labels[x],))
    return SignedElement(x, signo, es_central(A, x))


def verify_nucleus(A: FinResLat, exigir: bool = False) -> Informe:
    """
    Comprueba que γ es un núcleo: creciente, monótono, idempotente,
    γ(x)γ(y) ≤ γ(xy), y que su imagen es el esqueleto.
    """
    _exigir_conica_idempotente(A, "verify_nucleus")
    informe = Informe("núcleo γ")
    e = A.labels
    g = [_gamma(A, x) for x in range(A.n)]
    for x in range(A.n):
        if not A.leq[x][g[x]]:
            informe.agregar("creciente", (e[x],))
        if g[g[x]] != g[x]:
            informe.agregar("idempotente", (e[x],))
    for x, y in itertools.product(range(A.n), repeat=2):
        if A.leq[x][y] and not A.leq[g[x]][g[y]]:
            informe.agregar("monótono", (e[x], e[y]))
        if not A.leq[A.mult[g[x]][g[y]]][g[A.mult[x][y]]]:
            informe.agregar("núcleo", (e[x], e[y]))
    if frozenset(g) != skeleton_elements(A):
        diferencia = frozenset(g) ^ skeleton_elements(A)
        informe.agregar("imagen", A.etiquetas_de(diferencia), "la imagen de γ no es el esqueleto")
    if exigir:
        informe.exigir(NucleusViolation)
    return informe


# ============================================================
# Esqueleto y bloques
# ============================================================

def skeleton_elements(A: FinResLat) -> frozenset[int]:
    """A^i: todos los inversos x^ℓ, x^r."""
    return frozenset(inv_ell(A, x) for x in range(A.n)) | frozenset(inv_r(A, x) for x in range(A.n))


def skeleton(A: FinResLat) -> FinResLat:
    _exigir_conica_idempotente(A, "skeleton")
    S = subalgebra(A, skeleton_elements(A))
    if not S.es_cadena or not _cuasi_involutiva(S):
        raise InconsistenciaInterna(f"el esqueleto de {A!r} no es una cadena cuasi-involutiva")
    return S


def _cuasi_involutiva(A: FinResLat) -> bool:
    return all(_gamma(A, x) == x for x in range(A.n))


def is_quasi_involutive(A: FinResLat) -> bool:
    if not (A.es_idempotente and A.es_conica):
        return False
    return _cuasi_involutiva(A)


def blocks(A: FinResLat) -> dict[int, tuple[int, ...]]:
    """Fibras de γ indexadas por el elemento del esqueleto, en el orden de A."""
    _exigir_conica_idempotente(A, "blocks")
    fibras: dict[int, list[int]] = {s: [] for s in sorted(skeleton_elements(A), key=A.posicion.__getitem__)}
    for x in A.orden_lineal:
        fibras[_gamma(A, x)].append(x)
    return {s: tuple(xs) for s, xs in fibras.items()}


def _sin_infimo_en_bloque(A: FinResLat, bloque: Sequence[int]) -> tuple[int, int] | None:
    contenido = set(bloque)
    for x, y in itertools.combinations(bloque, 2):
        if A.meet[x][y] not in contenido:
            return x, y
    return None


def block_kind(A: FinResLat, s: int) -> str:
    """Tipo del bloque γ⁻¹(s): brouwerian, lattice, proper_prelattice o trivial."""
    bloque = blocks(A).get(s)
    if bloque is None:
        raise ErrorReticulo(f"{A.labels[s]} no pertenece al esqueleto", (A.labels[s],))
    if len(bloque) == 1:
        return TRIVIAL
    if A.leq[s][A.unit]:
        _comprobar_brouweriano(A, s, bloque)
        return BROUWERIANO
    if _sin_infimo_en_bloque(A, bloque) is not None:
        return PRERRETICULO_PROPIO
    return RETICULO


def _comprobar_brouweriano(A: FinResLat, s: int, bloque: Sequence[int]) -> None:
    """x ⇒ y = (x\\y) ∧ s debe ser el pseudocomplemento relativo dentro del bloque."""
    for x, y in itertools.product(bloque, repeat=2):
        implicacion = A.meet[A.ld[x][y]][s]
        if implicacion not in bloque:
            raise InconsistenciaInterna(f"x⇒y sale del bloque de {A.labels[s]}")
        for z in bloque:
            if A.leq[A.meet[z][x]][y] != A.leq[z][implicacion]:
                raise InconsistenciaInterna(
                    f"el bloque negativo de {A.labels[s]} no es brouweriano en {A.labels[x]}, {A.labels[y]}"
                )


def cubre(A: FinResLat, x: int, y: int) -> bool:
    """x ≺ y."""
    if not A.lt(x, y):
        return False
    return not any(A.lt(x, z) and A.lt(z, y) for z in range(A.n))


def cubierta_inferior(A: FinResLat, y: int) -> int | None:
    debajo = [x for x in range(A.n) if cubre(A, x, y)]
    return debajo[0] if len(debajo) == 1 else None


# ============================================================
# Predicados
# ============================================================

def is_idempotent(A: FinResLat) -> bool:
    return A.es_idempotente


def is_commutative(A: FinResLat) -> bool:
    return all(A.mult[x][y] == A.mult[y][x] for x in range(A.n) for y in range(x + 1, A.n))


def is_integral(A: FinResLat) -> bool:
    return A.unit == A.top


def is_conic(A: FinResLat) -> bool:
    return A.es_conica


def is_chain(A: FinResLat) -> bool:
    return A.es_cadena


def is_distributive(A: FinResLat) -> bool:
    m, j = A.meet, A.join
    return all(
        m[x][j[y][z]] == j[m[x][y]][m[x][z]]
        for x, y, z in itertools.product(range(A.n), repeat=3)
    )


def is_star_involutive(A: FinResLat) -> bool:
    """x^⋆⋆ = x, con x^⋆ = x^ℓ ∧ x^r."""
    return all(_estrella(A, _estrella(A, x)) == x for x in range(A.n))


def is_rigid(A: FinResLat) -> bool:
    """x^r = x^{r⋆⋆} y x^ℓ = x^{ℓ⋆⋆}."""
    if not (A.es_idempotente and A.es_conica):
        return False
    for x in range(A.n):
        for inverso in (inv_r(A, x), inv_ell(A, x)):
            if _estrella(A, _estrella(A, inverso)) != inverso:
                return False
    return True


def is_conjunctive(A: FinResLat) -> bool:
    """γ(x∧y) = γ(x)∧γ(y), contrastado con «todos los bloques son retículos»."""
    if not (A.es_idempotente and A.es_conica):
        return False
    por_identidad = all(
        _gamma(A, A.meet[x][y]) == A.meet[_gamma(A, x)][_gamma(A, y)]
        for x in range(A.n)
        for y in range(x, A.n)
    )
    por_bloques = all(_sin_infimo_en_bloque(A, b) is None for b in blocks(A).values())
    if por_identidad != por_bloques:
        raise InconsistenciaInterna(
            f"conjuntividad de {A!r}: identidad={por_identidad}, bloques={por_bloques}"
        )
    return por_identidad


@dataclass(frozen=True)
class PropertyFlags:
    idempotent: bool
    commutative: bool
    integral: bool
    conic: bool
    chain: bool
    distributive: bool
    quasi_involutive: bool
    star_involutive: bool
    rigid: bool
    conjunctive: bool
    semiconic: bool

    def como_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def property_flags(A: FinResLat) -> PropertyFlags:
    from reticulos.congruencias import is_semiconic_finite

    return PropertyFlags(
        idempotent=A.es_idempotente,
        commutative=is_commutative(A),
        integral=is_integral(A),
        conic=A.es_conica,
        chain=A.es_cadena,
        distributive=is_distributive(A),
        quasi_involutive=is_quasi_involutive(A),
        star_involutive=is_star_involutive(A),
        rigid=is_rigid(A),
        conjunctive=is_conjunctive(A),
        semiconic=is_semiconic_finite(A),
    )


def conjugates(A: FinResLat, x: int, a: int) -> tuple[int, int]:
    """(λ_x(a), ρ_x(a)) = (x\\(ax) ∧ 1, (xa)/x ∧ 1)."""
    lam = A.meet[A.ld[x][A.mult[a][x]]][A.unit]
    rho = A.meet[A.rd[A.mult[x][a]][x]][A.unit]
    return lam, rho


# ============================================================
# Subálgebras, homomorfismos e isomorfismos
# ============================================================

def _operaciones(A: FinResLat) -> tuple[Tabla, ...]:
    return (A.mult, A.ld, A.rd, A.meet, A.join)


def is_subuniverse(A: FinResLat, elementos: Iterable[int]) -> bool:
    conjunto = frozenset(elementos)
    if A.unit not in conjunto:
        return False
    return all(
        op[x][y] in conjunto
        for op in _operaciones(A)
        for x in conjunto
        for y in conjunto
    )


def subuniverse_closure(A: FinResLat, semillas: Iterable[int]) -> frozenset[int]:
    """Menor subuniverso que contiene a las semillas (clausura bruta por todas las operaciones)."""
    conjunto = set(semillas) | {A.unit}
    pendientes = list(conjunto)
    while pendientes:
        x = pendientes.pop()
        for y in list(conjunto):
            for op in _operaciones(A):
                for nuevo in (op[x][y], op[y][x]):
                    if nuevo not in conjunto:
                        conjunto.add(nuevo)
                        pendientes.append(nuevo)
    return frozenset(conjunto)


def enumerate_subuniverses(A: FinResLat) -> list[frozenset[int]]:
    encontrados = {subuniverse_closure(A, ())}
    pendientes = list(encontrados)
    while pendientes:
        S = pendientes.pop()
        for x in range(A.n):
            if x in S:
                continue
            T = subuniverse_closure(A, S | {x})
            if T not in encontrados:
                encontrados.add(T)
                pendientes.append(T)
    return sorted(encontrados, key=lambda S: (len(S), sorted(A.posicion[x] for x in S)))


def subalgebra(A: FinResLat, elementos: Iterable[int]) -> FinResLat:
    """Subálgebra sobre `elementos` (conserva etiquetas y el orden relativo de índices)."""
    universo = sorted(frozenset(elementos) | {A.unit})
    if not is_subuniverse(A, universo):
        raise ErrorReticulo(
            "el conjunto no es cerrado bajo las operaciones",
            A.etiquetas_de(universo),
        )
    nuevo = {x: i for i, x in enumerate(universo)}

    def _restringir(tabla: Tabla) -> list[list[int]]:
        return [[nuevo[tabla[x][y]] for y in universo] for x in universo]

    return FinResLat.desde_tablas(
        [A.labels[x] for x in universo],
        [[A.leq[x][y] for y in universo] for x in universo],
        _restringir(A.mult),
        nuevo[A.unit],
        _restringir(A.ld),
        _restringir(A.rd),
    )


def reorder(A: FinResLat, etiquetas: Sequence[str]) -> FinResLat:
    """La misma álgebra con los índices en el orden de `etiquetas`."""
    if sorted(etiquetas) != sorted(A.labels):
        raise ErrorReticulo("las etiquetas no son una permutación del universo", tuple(etiquetas))
    viejo = [A.indice(e) for e in etiquetas]
    nuevo = {x: i for i, x in enumerate(viejo)}
    return FinResLat.desde_tablas(
        etiquetas,
        [[A.leq[x][y] for y in viejo] for x in viejo],
        [[nuevo[A.mult[x][y]] for y in viejo] for x in viejo],
        nuevo[A.unit],
    )


def renombrar(A: FinResLat, nuevos: Mapping[str, str]) -> FinResLat:
    """La misma álgebra con etiquetas cambiadas según `nuevos` (las ausentes se conservan)."""
    return FinResLat.desde_tablas(
        [nuevos.get(e, e) for e in A.labels], A.leq, A.mult, A.unit, A.ld, A.rd
    )


def same_algebra(A: FinResLat, B: FinResLat) -> bool:
    """Igualdad elemento a elemento a través de las etiquetas."""
    if set(A.labels) != set(B.labels) or A.labels[A.unit] != B.labels[B.unit]:
        return False
    h = [B.indice(e) for e in A.labels]
    return all(
        A.leq[x][y] == B.leq[h[x]][h[y]] and h[A.mult[x][y]] == B.mult[h[x]][h[y]]
        for x in range(A.n)
        for y in range(A.n)
    )


def is_homomorphism(A: FinResLat, B: FinResLat, h: Sequence[int], nombre: str = "homomorfismo") -> Informe:
    """Comprueba que h: A → B preserva 1, ·, \\, /, ∧ y ∨ en todos los pares."""
    informe = Informe(nombre)
    if len(h) != A.n:
        informe.agregar("dominio", (), f"la función tiene {len(h)} valores para {A.n} elementos")
        return informe
    if h[A.unit] != B.unit:
        informe.agregar("unidad", (A.labels[A.unit],))
    nombres = ("·", "\\", "/", "∧", "∨")
    for simbolo, op_a, op_b in zip(nombres, _operaciones(A), _operaciones(B)):
        for x, y in itertools.product(range(A.n), repeat=2):
            if h[op_a[x][y]] != op_b[h[x]][h[y]]:
                informe.agregar(simbolo, (A.labels[x], A.labels[y]))
                break
    return informe


def find_isomorphism(A: FinResLat, B: FinResLat) -> dict[int, int] | None:
    """Isomorfismo A → B por búsqueda con retroceso, o None."""
    if A.n != B.n or A.es_cadena != B.es_cadena:
        return None

    def _firma(X: FinResLat, x: int) -> tuple:
        return (
            sum(X.leq[y][x] for y in range(X.n)),
            sum(X.leq[x][y] for y in range(X.n)),
            X.leq[x][X.unit],
            X.leq[X.unit][x],
            X.mult[x][x] == x,
        )

    firmas_b = [_firma(B, y) for y in range(B.n)]
    orden = sorted(range(A.n), key=lambda x: (x != A.unit, A.posicion[x]))
    h: dict[int, int] = {}
    usados: set[int] = set()

    def _consistente(x: int, y: int) -> bool:
        for x2, y2 in h.items():
            if A.leq[x][x2] != B.leq[y][y2] or A.leq[x2][x] != B.leq[y2][y]:
                return False
            for u, v in ((x, x2), (x2, x), (x, x)):
                p = A.mult[u][v]
                if p in h:
                    w = B.mult[h.get(u, y)][h.get(v, y)]
                    if h[p] != w:
                        return False
        return True

    def _buscar(i: int) -> bool:
        if i == len(orden):
            return all(
                h[A.mult[u][v]] == B.mult[h[u]][h[v]]
                for u in range(A.n)
                for v in range(A.n)
            )
        x = orden[i]
        candidatos = [B.unit] if x == A.unit else range(B.n)
        for y in candidatos:
            if y in usados or firmas_b[y] != _firma(A, x) or not _consistente(x, y):
                continue
            h[x] = y
            usados.add(y)
            if _buscar(i + 1):
                return True
            del h[x]
            usados.discard(y)
        return False

    if not _buscar(0):
        return None
    lista = [h[x] for x in range(A.n)]
    if not is_homomorphism(A, B, lista):
        raise InconsistenciaInterna("la búsqueda de isomorfismos devolvió una función inválida")
    return h


def direct_product(A: FinResLat, B: FinResLat) -> FinResLat:
    pares = list(itertools.product(range(A.n), range(B.n)))
    indice = {p: i for i, p in enumerate(pares)}
    return FinResLat.desde_tablas(
        [f"({A.labels[a]},{B.labels[b]})" for a, b in pares],
        [[A.leq[a][c] and B.leq[b][d] for c, d in pares] for a, b in pares],
        [[indice[(A.mult[a][c], B.mult[b][d])] for c, d in pares] for a, b in pares],
        indice[(A.unit, B.unit)],
    )


def exigir_cadena_idempotente(A: FinResLat, operacion: str) -> None:
    if not A.es_cadena:
        raise NotAChain(f"{operacion} requiere una cadena")
    if not A.es_idempotente:
        raise NotAChain(f"{operacion} requiere una cadena idempotente")
