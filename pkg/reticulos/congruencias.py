"""
congruencias.py — Filtros de congruencia, términos s_n / t_n y propiedades de congruencias
==========================================================================================
Las congruencias de un retículo residuado finito se manejan a través de sus
filtros de congruencia: filtros del retículo cerrados bajo producto y conjugación.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Final, Iterable

from reticulos.config import PROFUNDIDAD_ESQUEMA, mapear_en_paralelo
from reticulos.errores import (
    CepFailure,
    ErrorReticulo,
    InconsistenciaInterna,
    Informe,
    NotSemiconicIdempotent,
)
from reticulos.nucleo import (
    FinResLat,
    conjugates,
    enumerate_subuniverses,
    inv_ell,
    inv_r,
    subalgebra,
)

LOGGER: Final = logging.getLogger(__name__)


# ============================================================
# Tipos
# ============================================================

@dataclass(frozen=True)
class CongFilter:
    elementos: frozenset[int]

    def __len__(self) -> int:
        return len(self.elementos)

    def __contains__(self, x: int) -> bool:
        return x in self.elementos


@dataclass(frozen=True)
class Congruence:
    """Partición del universo; `representante[x]` es el menor índice de la clase de x."""
    representante: tuple[int, ...]

    @classmethod
    def desde_clases(cls, n: int, clases: Iterable[Iterable[int]]) -> "Congruence":
        rep = list(range(n))
        for clase in clases:
            miembros = sorted(clase)
            for x in miembros:
                rep[x] = miembros[0]
        return cls(tuple(rep))

    def relaciona(self, x: int, y: int) -> bool:
        return self.representante[x] == self.representante[y]

    @cached_property
    def clases(self) -> tuple[frozenset[int], ...]:
        por_rep: dict[int, set[int]] = {}
        for x, r in enumerate(self.representante):
            por_rep.setdefault(r, set()).add(x)
        return tuple(frozenset(por_rep[r]) for r in sorted(por_rep))

    def clase_de(self, x: int) -> frozenset[int]:
        return next(c for c in self.clases if x in c)

    @property
    def es_identidad(self) -> bool:
        return len(self.clases) == len(self.representante)

    @property
    def es_total(self) -> bool:
        return len(self.clases) == 1


def identidad(A: FinResLat) -> Congruence:
    return Congruence(tuple(range(A.n)))


def total(A: FinResLat) -> Congruence:
    return Congruence((0,) * A.n)


# ============================================================
# Filtros de congruencia
# ============================================================

def es_filtro_congruencia(A: FinResLat, F: Iterable[int]) -> Informe:
    conjunto = frozenset(F)
    informe = Informe("filtro de congruencia")
    e = A.labels
    if A.unit not in conjunto:
        informe.agregar("1", (e[A.unit],))
    for x in conjunto:
        for y in range(A.n):
            if A.leq[x][y] and y not in conjunto:
                informe.agregar("superior", (e[x], e[y]))
                return informe
    for x, y in itertools.product(conjunto, repeat=2):
        if A.mult[x][y] not in conjunto:
            informe.agregar("producto", (e[x], e[y]))
            return informe
        if A.meet[x][y] not in conjunto:
            informe.agregar("ínfimo", (e[x], e[y]))
            return informe
    for a in conjunto:
        for x in range(A.n):
            lam, rho = conjugates(A, x, a)
            if lam not in conjunto or rho not in conjunto:
                informe.agregar("conjugación", (e[x], e[a]))
                return informe
    return informe


def generate_filter_oracle(A: FinResLat, Y: Iterable[int]) -> CongFilter:
    """Clausura por punto fijo bajo las condiciones de filtro de congruencia."""
    conjunto = set(Y) | {A.unit}
    while True:
        nuevos = set()
        for x in conjunto:
            nuevos.update(y for y in range(A.n) if A.leq[x][y])
            for z in range(A.n):
                nuevos.update(conjugates(A, z, x))
        for x, y in itertools.product(conjunto, repeat=2):
            nuevos.add(A.mult[x][y])
            nuevos.add(A.meet[x][y])
        if nuevos <= conjunto:
            return CongFilter(frozenset(conjunto))
        conjunto |= nuevos


def filter_from_congruence(A: FinResLat, theta: Congruence) -> CongFilter:
    """F_θ = ↑[1]_θ."""
    clase = theta.clase_de(A.unit)
    return CongFilter(frozenset(y for y in range(A.n) if any(A.leq[x][y] for x in clase)))


def congruence_from_filter(A: FinResLat, F: CongFilter) -> Congruence:
    """a θ_F b sii a\\b y b\\a están en F."""
    rep = list(range(A.n))
    for b in range(A.n):
        for a in range(b):
            if A.ld[a][b] in F and A.ld[b][a] in F:
                rep[b] = rep[a]
                break
    return Congruence(tuple(rep))


def es_congruencia(A: FinResLat, theta: Congruence) -> bool:
    """Compatibilidad de la partición con ·, \\, /, ∧ y ∨."""
    ops = (A.mult, A.ld, A.rd, A.meet, A.join)
    for clase in theta.clases:
        for x, y in itertools.combinations(sorted(clase), 2):
            for z in range(A.n):
                for op in ops:
                    if not theta.relaciona(op[x][z], op[y][z]) or not theta.relaciona(op[z][x], op[z][y]):
                        return False
    return True


# ============================================================
# Términos s_n y t_n
# ============================================================

def _dobles(A: FinResLat, valores: Iterable[int]) -> frozenset[int]:
    return frozenset(
        v
        for y in valores
        for v in (inv_ell(A, inv_ell(A, y)), inv_r(A, inv_r(A, y)))
    )


def s_term(A: FinResLat, y: int, n: int = 1) -> int:
    """s_n(y) = y ∧ ⋀{y^{c₁c₁…cₙcₙ}}, por la fórmula directa."""
    if n < 1:
        raise ErrorReticulo("el exponente de s_n debe ser al menos 1", (n,))
    palabras = frozenset({y})
    for _ in range(n):
        palabras = _dobles(A, palabras)
    resultado = y
    for v in palabras:
        resultado = A.meet[resultado][v]
    return resultado


def s_iterado(A: FinResLat, y: int, n: int = 1) -> int:
    """sⁿ(y): composición n veces de s = s_1."""
    for _ in range(n):
        y = s_term(A, y, 1)
    return y


def t_term(A: FinResLat, y: int, n: int = 1) -> int:
    return A.meet[A.unit][s_term(A, y, n)]


def t_iterado(A: FinResLat, y: int, n: int = 1) -> int:
    for _ in range(n):
        y = t_term(A, y, 1)
    return y


def estabilizacion(A: FinResLat, y: int) -> int:
    """Menor N ≥ 1 con s^{N+1}(y) = s^N(y); nunca supera |A|."""
    actual = s_term(A, y, 1)
    for N in range(1, A.n + 1):
        siguiente = s_term(A, actual, 1)
        if siguiente == actual:
            return N
        actual = siguiente
    raise InconsistenciaInterna(f"la iteración de s desde {A.labels[y]} no se estabiliza")


# ============================================================
# Semiconicidad
# ============================================================

def _exigir_semiconica_idempotente(A: FinResLat, operacion: str) -> None:
    if not A.es_idempotente:
        raise NotSemiconicIdempotent(f"{operacion} requiere un álgebra idempotente")
    if not is_semiconic_finite(A):
        raise NotSemiconicIdempotent(f"{operacion} requiere un álgebra semicónica")


def is_semiconic_finite(A: FinResLat) -> bool:
    """Todos los cocientes subdirectamente irreducibles son cónicos."""
    if A.es_conica:
        return True
    return all(Q.es_conica for Q in cocientes_si(A))


def check_semiconic_schema(A: FinResLat, profundidad: int = PROFUNDIDAD_ESQUEMA) -> bool:
    """
    1 = γ₁(x∧1) ∨ γ₂((x\\1)∧1) para los conjugados iterados de hasta `profundidad`
    composiciones. Es una aproximación acotada: verdadera en toda álgebra semicónica.
    """
    u = A.unit
    generadores = []
    for z in range(A.n):
        generadores.append(tuple(conjugates(A, z, a)[0] for a in range(A.n)))
        generadores.append(tuple(conjugates(A, z, a)[1] for a in range(A.n)))
    funciones = {tuple(range(A.n))}
    frontera = set(funciones)
    for _ in range(profundidad):
        nuevas = {tuple(g[f[a]] for a in range(A.n)) for f in frontera for g in generadores}
        frontera = nuevas - funciones
        funciones |= nuevas
    LOGGER.debug("Esquema semicónico con %d conjugados iterados", len(funciones))
    for x in range(A.n):
        izquierda = {g[A.meet[x][u]] for g in funciones}
        derecha = {g[A.meet[inv_r(A, x)][u]] for g in funciones}
        if any(A.join[p][q] != u for p in izquierda for q in derecha):
            return False
    return True


# ============================================================
# Fórmula de generación
# ============================================================

def generate_filter_formula(A: FinResLat, Y: Iterable[int]) -> CongFilter:
    """↑ de los ínfimos finitos de t_n(y∧1), con n hasta el punto de estabilización."""
    _exigir_semiconica_idempotente(A, "generate_filter_formula")
    u = A.unit
    generadores = {u}
    for y in Y:
        y1 = A.meet[y][u]
        for n in range(1, estabilizacion(A, y1) + 1):
            generadores.add(t_term(A, y1, n))
    cerrados = set(generadores)
    while True:
        nuevos = {A.meet[x][y] for x in cerrados for y in cerrados} - cerrados
        if not nuevos:
            break
        cerrados |= nuevos
    return CongFilter(frozenset(y for y in range(A.n) if any(A.leq[x][y] for x in cerrados)))


def agregar_elemento(A: FinResLat, F: CongFilter, a: int) -> CongFilter:
    """⟨F ∪ {a}⟩ = ↑{y ∧ s_n(a)}."""
    _exigir_semiconica_idempotente(A, "agregar_elemento")
    cotas = {
        A.meet[y][s_term(A, a, n)]
        for y in F.elementos
        for n in range(1, estabilizacion(A, a) + 1)
    }
    return CongFilter(frozenset(z for z in range(A.n) if any(A.leq[x][z] for x in cotas)))


# ============================================================
# Retículo de congruencias
# ============================================================

def _filtro_principal(tarea: tuple[FinResLat, int]) -> CongFilter:
    A, a = tarea
    return generate_filter_oracle(A, (a,))


def enumerate_filters(A: FinResLat) -> list[CongFilter]:
    """Todos los filtros de congruencia: clausura por supremos de los principales."""
    principales = mapear_en_paralelo(_filtro_principal, [(A, a) for a in range(A.n)])
    encontrados = {generate_filter_oracle(A, ())} | set(principales)
    pendientes = list(encontrados)
    while pendientes:
        F = pendientes.pop()
        for P in principales:
            G = generate_filter_oracle(A, F.elementos | P.elementos)
            if G not in encontrados:
                encontrados.add(G)
                pendientes.append(G)
    return sorted(encontrados, key=lambda F: (len(F), sorted(A.posicion[x] for x in F.elementos)))


def enumerate_congruences(A: FinResLat) -> list[Congruence]:
    """Congruencias de la identidad a la total."""
    return [congruence_from_filter(A, F) for F in enumerate_filters(A)]


def quotient(A: FinResLat, theta: Congruence) -> FinResLat:
    """A/θ; cada clase lleva la etiqueta de su elemento mínimo en el orden de A."""
    clases = sorted(theta.clases, key=lambda c: min(A.posicion[x] for x in c))
    de_clase = {x: i for i, c in enumerate(clases) for x in c}
    reps = [min(c, key=A.posicion.__getitem__) for c in clases]
    k = len(clases)
    try:
        return FinResLat.desde_tablas(
            [A.labels[r] for r in reps],
            [[de_clase[A.join[reps[i]][reps[j]]] == j for j in range(k)] for i in range(k)],
            [[de_clase[A.mult[reps[i]][reps[j]]] for j in range(k)] for i in range(k)],
            de_clase[A.unit],
            [[de_clase[A.ld[reps[i]][reps[j]]] for j in range(k)] for i in range(k)],
            [[de_clase[A.rd[reps[i]][reps[j]]] for j in range(k)] for i in range(k)],
        )
    except ErrorReticulo as exc:
        raise InconsistenciaInterna(f"el cociente no es un retículo residuado: {exc}") from exc


def _filtros_minimales(A: FinResLat, filtros: list[CongFilter]) -> list[CongFilter]:
    """Átomos del retículo de filtros (los filtros propios por encima de ↑1)."""
    minimo = min(filtros, key=len)
    propios = [F for F in filtros if F != minimo]
    return [F for F in propios if not any(G.elementos < F.elementos for G in propios)]


def monolith(A: FinResLat) -> Congruence | None:
    """La menor congruencia no trivial, si es única."""
    if A.n == 1:
        return None
    atomos = _filtros_minimales(A, enumerate_filters(A))
    if len(atomos) != 1:
        return None
    return congruence_from_filter(A, atomos[0])


def is_si(A: FinResLat) -> bool:
    return monolith(A) is not None


def uno_es_irreducible(A: FinResLat) -> bool:
    u = A.unit
    if u == A.bottom:
        return False
    return all(
        x == u or y == u
        for x in range(A.n)
        for y in range(x, A.n)
        if A.join[x][y] == u
    )


def is_fsi(A: FinResLat) -> bool:
    """
    La identidad es ∧-irreducible en el retículo de congruencias. En álgebras
    semicónicas idempotentes se contrasta con la ∨-irreducibilidad de 1.
    """
    if A.n == 1:
        return False
    filtros = enumerate_filters(A)
    minimo = min(filtros, key=len)
    propios = [F for F in filtros if F != minimo]
    por_congruencias = all(
        (F.elementos & G.elementos) != minimo.elementos
        for F, G in itertools.combinations(propios, 2)
    )
    if A.es_idempotente and is_semiconic_finite(A):
        por_unidad = uno_es_irreducible(A)
        if por_unidad != por_congruencias:
            raise InconsistenciaInterna(
                f"is_fsi de {A!r}: congruencias={por_congruencias}, 1 irreducible={por_unidad}"
            )
    return por_congruencias


def cocientes_si(A: FinResLat) -> list[FinResLat]:
    """Cocientes subdirectamente irreducibles de A."""
    resultado = []
    for theta in enumerate_congruences(A):
        if theta.es_total:
            continue
        Q = quotient(A, theta)
        if is_si(Q):
            resultado.append(Q)
    return resultado


# ============================================================
# Extensión de congruencias e implicación de unión 1
# ============================================================

def check_cep(B: FinResLat, exigir: bool = True) -> Informe:
    """
    Para cada subálgebra A de B y cada congruencia θ de A, la congruencia de B
    generada por F_θ debe restringirse a θ. Registra la extensión hallada.
    """
    _exigir_semiconica_idempotente(B, "check_cep")
    informe = Informe("propiedad de extensión de congruencias")
    extensiones = []
    for universo in enumerate_subuniverses(B):
        A = subalgebra(B, universo)
        a_en_b = [B.indice(e) for e in A.labels]
        for F in enumerate_filters(A):
            imagen = frozenset(a_en_b[x] for x in F.elementos)
            Psi = generate_filter_oracle(B, imagen)
            restringido = frozenset(x for x in range(A.n) if a_en_b[x] in Psi)
            if restringido != F.elementos:
                informe.agregar(
                    "extensión",
                    (B.etiquetas_de(universo), A.etiquetas_de(F.elementos)),
                    "la congruencia generada en B no se restringe a θ",
                )
                continue
            extensiones.append((B.etiquetas_de(universo), A.etiquetas_de(F.elementos), B.etiquetas_de(Psi.elementos)))
    informe.datos["extensiones"] = extensiones
    LOGGER.info("CEP en %r: %d pares (subálgebra, congruencia)", B, len(extensiones))
    if exigir:
        informe.exigir(CepFailure)
    return informe


def check_join_one_implication(A: FinResLat) -> Informe:
    """x ∨ y = 1 implica s_n(x) ∨ s_m(y) = 1, con n y m hasta la estabilización."""
    _exigir_semiconica_idempotente(A, "check_join_one_implication")
    informe = Informe("implicación de unión 1")
    u = A.unit
    for x in range(A.n):
        for y in range(A.n):
            if A.join[x][y] != u:
                continue
            sx = [s_term(A, x, n) for n in range(1, estabilizacion(A, x) + 1)]
            sy = [s_term(A, y, m) for m in range(1, estabilizacion(A, y) + 1)]
            for (n, p), (m, q) in itertools.product(enumerate(sx, 1), enumerate(sy, 1)):
                if A.join[p][q] != u:
                    informe.agregar("unión 1", (A.labels[x], A.labels[y], n, m))
                    break
    return informe
