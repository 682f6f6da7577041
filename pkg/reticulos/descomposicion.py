"""
descomposicion.py — Sistemas de descomposición de retículos residuados idempotentes cónicos
=============================================================================================
Un álgebra cónica idempotente es la suma ordinal de sus bloques γ⁻¹(s) sobre el
esqueleto, con el producto y los residuos dados por casos. Este módulo extrae
el sistema, reconstruye el álgebra y evalúa subsistemas y subvariedades.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Final, Iterable, Sequence

from reticulos.errores import (
    ErrorReticulo,
    FormatoInvalido,
    InconsistenciaInterna,
    Informe,
    InvalidSystem,
    NotCommutative,
)
from reticulos.nucleo import (
    FinResLat,
    Relacion,
    _exigir_conica_idempotente,
    blocks,
    calcular_inf_sup,
    cubierta_inferior,
    inv_ell,
    inv_r,
    is_commutative,
    is_conjunctive,
    is_distributive,
    is_rigid,
    is_star_involutive,
    is_subuniverse,
    orden_desde_coberturas,
    same_algebra,
    skeleton,
    tablas_parciales,
)

LOGGER: Final = logging.getLogger(__name__)


# ============================================================
# Bloques
# ============================================================

@dataclass(frozen=True, repr=False)
class Bloque:
    """Semirretículo superior finito con tope (un prerretículo) dado por su orden."""
    labels: tuple[str, ...]
    leq: Relacion
    top: int

    @classmethod
    def desde_coberturas(cls, labels: Sequence[str], covers: Iterable[tuple[str, str]], top: str) -> "Bloque":
        etiquetas = tuple(labels)
        if top not in etiquetas:
            raise FormatoInvalido(f"el tope {top} no está en el bloque", (top,))
        return cls(etiquetas, orden_desde_coberturas(etiquetas, covers), etiquetas.index(top))

    @classmethod
    def trivial(cls, etiqueta: str) -> "Bloque":
        return cls((etiqueta,), ((True,),), 0)

    @classmethod
    def cadena(cls, etiquetas: Sequence[str]) -> "Bloque":
        """Cadena de abajo hacia arriba; el tope es la última etiqueta."""
        n = len(etiquetas)
        return cls(tuple(etiquetas), tuple(tuple(i <= j for j in range(n)) for i in range(n)), n - 1)

    def __repr__(self) -> str:
        return f"Bloque({', '.join(self.labels)}; tope={self.labels[self.top]})"

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def etiqueta_tope(self) -> str:
        return self.labels[self.top]

    def indice(self, etiqueta: str) -> int:
        return self.labels.index(etiqueta)

    @cached_property
    def _tablas(self) -> tuple[list[list[int | None]], list[list[int | None]]]:
        return tablas_parciales(self.leq)

    @property
    def meet(self) -> list[list[int | None]]:
        return self._tablas[0]

    @property
    def join(self) -> list[list[int | None]]:
        return self._tablas[1]

    @cached_property
    def orden_lineal(self) -> tuple[int, ...]:
        alturas = [sum(self.leq[y][x] for y in range(self.n)) for x in range(self.n)]
        return tuple(sorted(range(self.n), key=lambda x: (alturas[x], x)))

    @cached_property
    def es_prerreticulo(self) -> bool:
        return all(self.leq[x][self.top] for x in range(self.n)) and all(
            v is not None for fila in self.join for v in fila
        )

    @cached_property
    def es_reticulo(self) -> bool:
        return self.es_prerreticulo and all(v is not None for fila in self.meet for v in fila)

    @cached_property
    def es_distributivo(self) -> bool:
        if not self.es_reticulo:
            return False
        m, j = self.meet, self.join
        return all(
            m[x][j[y][z]] == j[m[x][y]][m[x][z]]
            for x, y, z in itertools.product(range(self.n), repeat=3)
        )

    @cached_property
    def es_cadena(self) -> bool:
        return all(self.leq[x][y] or self.leq[y][x] for x in range(self.n) for y in range(self.n))

    @cached_property
    def implicacion(self) -> tuple[tuple[int, ...], ...] | None:
        """x ⇒ y = max{z : z ∧ x ≤ y}; None si el bloque no es brouweriano."""
        if not self.es_reticulo:
            return None
        m = self.meet
        tabla = []
        for x in range(self.n):
            fila = []
            for y in range(self.n):
                candidatos = [z for z in range(self.n) if self.leq[m[z][x]][y]]
                maximo = next(
                    (c for c in candidatos if all(self.leq[d][c] for d in candidatos)),
                    None,
                )
                if maximo is None:
                    return None
                fila.append(maximo)
            tabla.append(tuple(fila))
        return tuple(tabla)

    @property
    def es_brouweriano(self) -> bool:
        return self.implicacion is not None

    def par_sin_infimo(self) -> tuple[int, int] | None:
        for x, y in itertools.combinations(range(self.n), 2):
            if self.meet[x][y] is None:
                return x, y
        return None

    def restringir(self, etiquetas: Iterable[str]) -> "Bloque":
        elegidas = [e for e in self.labels if e in set(etiquetas)]
        idx = [self.indice(e) for e in elegidas]
        return Bloque(
            tuple(elegidas),
            tuple(tuple(self.leq[x][y] for y in idx) for x in idx),
            elegidas.index(self.etiqueta_tope),
        )

    def renombrar(self, nuevos: dict[str, str]) -> "Bloque":
        return Bloque(tuple(nuevos.get(e, e) for e in self.labels), self.leq, self.top)


def mismo_bloque(a: Bloque, b: Bloque) -> bool:
    """Igualdad como posets etiquetados."""
    if set(a.labels) != set(b.labels) or a.etiqueta_tope != b.etiqueta_tope:
        return False
    h = [b.indice(e) for e in a.labels]
    return all(a.leq[x][y] == b.leq[h[x]][h[y]] for x in range(a.n) for y in range(a.n))


# ============================================================
# Sistemas de descomposición
# ============================================================

@dataclass(frozen=True)
class DecompSystem:
    """
    Esqueleto (cadena residuada idempotente) y un bloque con tope s por cada s.
    `blocks[s]` y `lower_cover[s]` se indexan con los índices del esqueleto;
    `lower_cover[s]` sólo se define cuando el bloque es un prerretículo propio.
    """
    skeleton: FinResLat
    blocks: tuple[Bloque, ...]
    lower_cover: tuple[int | None, ...]

    def bloque(self, etiqueta: str) -> Bloque:
        return self.blocks[self.skeleton.indice(etiqueta)]

    @property
    def tamano(self) -> int:
        return sum(b.n for b in self.blocks)


def sistema(skeleton_: FinResLat, bloques: dict[str, Bloque] | None = None) -> DecompSystem:
    """Sistema con bloques triviales salvo los indicados (por etiqueta de s); calcula las cubiertas inferiores."""
    bloques = bloques or {}
    lista = []
    cubiertas = []
    for s, etiqueta in enumerate(skeleton_.labels):
        b = bloques.get(etiqueta, Bloque.trivial(etiqueta))
        lista.append(b)
        cubiertas.append(cubierta_inferior(skeleton_, s) if not b.es_reticulo else None)
    return DecompSystem(skeleton_, tuple(lista), tuple(cubiertas))


def validate_system(D: DecompSystem) -> Informe:
    S = D.skeleton
    informe = Informe("sistema de descomposición")
    if not (S.es_cadena and S.es_idempotente):
        informe.agregar("esqueleto", S.labels, "el esqueleto debe ser una cadena residuada idempotente")
        return informe
    if len(D.blocks) != S.n or len(D.lower_cover) != S.n:
        informe.agregar("esqueleto", S.labels, "falta un bloque o una cubierta por elemento")
        return informe
    todas = [e for b in D.blocks for e in b.labels]
    if len(set(todas)) != len(todas):
        informe.agregar("etiquetas", tuple(sorted({e for e in todas if todas.count(e) > 1})))
    for s, b in enumerate(D.blocks):
        e = S.labels[s]
        if b.etiqueta_tope != e:
            informe.agregar("tope", (e, b.etiqueta_tope), "el tope del bloque debe ser s")
            continue
        if not b.es_prerreticulo:
            informe.agregar("prerretículo", (e,), "el bloque no es un semirretículo superior con tope")
            continue
        cubierta = cubierta_inferior(S, s)
        if cubierta is None and not b.es_reticulo:
            informe.agregar("1", (e,), "sin cubierta inferior el bloque debe ser un retículo")
        if S.leq[s][S.unit] and b.n > 1 and not b.es_brouweriano:
            informe.agregar("2", (e,), "un bloque negativo debe ser brouweriano")
        if b.n > 1 and inv_ell(S, s) != inv_r(S, s):
            informe.agregar("3", (e,), "un elemento no central tiene bloque trivial")
        if not b.es_reticulo and D.lower_cover[s] != cubierta:
            informe.agregar("4", (e,), "el prerretículo propio necesita la cubierta inferior de s")
    return informe


def build_algebra(D: DecompSystem) -> FinResLat:
    """A_D: suma ordinal de los bloques con el producto y los residuos por casos."""
    validate_system(D).exigir(InvalidSystem)
    S = D.skeleton
    elementos: list[tuple[int, int]] = []
    for s in S.orden_lineal:
        b = D.blocks[s]
        elementos.extend((s, x) for x in b.orden_lineal)
    etiquetas = [D.blocks[s].labels[x] for s, x in elementos]
    indice = {p: k for k, p in enumerate(elementos)}
    tope = {s: indice[(s, D.blocks[s].top)] for s in range(S.n)}
    n = len(elementos)

    leq = [
        [
            (s == t and D.blocks[s].leq[x][y]) or (s != t and S.leq[s][t])
            for t, y in elementos
        ]
        for s, x in elementos
    ]
    meet, join = calcular_inf_sup(tuple(map(tuple, leq)), etiquetas)
    u = S.unit

    def _producto(k: int, m: int) -> int:
        (s, _), (t, _) = elementos[k], elementos[m]
        if s == t:
            return meet[k][m] if S.leq[s][u] else join[k][m]
        return k if S.mult[s][t] == s else m

    def _residuo(k: int, m: int, inverso: int) -> int:
        (s, x), (t, y) = elementos[k], elementos[m]
        if leq[k][m]:
            return join[tope[inverso]][m]
        if S.lt(t, s) or (s == t and S.lt(u, s)):
            return meet[tope[inverso]][m]
        return indice[(s, D.blocks[s].implicacion[x][y])]

    mult = [[_producto(k, m) for m in range(n)] for k in range(n)]
    ld = [[_residuo(k, m, inv_r(S, elementos[k][0])) for m in range(n)] for k in range(n)]
    rd = [[0] * n for _ in range(n)]
    for k, m in itertools.product(range(n), repeat=2):
        rd[m][k] = _residuo(k, m, inv_ell(S, elementos[k][0]))
    try:
        return FinResLat.desde_tablas(etiquetas, leq, mult, tope[u], ld, rd)
    except ErrorReticulo as exc:
        raise InconsistenciaInterna(f"A_D no es un retículo residuado: {exc}") from exc


def extract_system(A: FinResLat) -> DecompSystem:
    _exigir_conica_idempotente(A, "extract_system")
    S = skeleton(A)
    fibras = blocks(A)
    lista = []
    cubiertas = []
    for s, etiqueta in enumerate(S.labels):
        fibra = fibras[A.indice(etiqueta)]
        b = Bloque(
            tuple(A.labels[x] for x in fibra),
            tuple(tuple(A.leq[x][y] for y in fibra) for x in fibra),
            fibra.index(A.indice(etiqueta)),
        )
        lista.append(b)
        cubiertas.append(cubierta_inferior(S, s) if not b.es_reticulo else None)
    D = DecompSystem(S, tuple(lista), tuple(cubiertas))
    informe = validate_system(D)
    if not informe:
        raise InconsistenciaInterna(f"el sistema extraído de {A!r} es inválido: {informe.fallos[0]}")
    return D


def mismo_sistema(D1: DecompSystem, D2: DecompSystem) -> bool:
    """Igualdad salvo identificación de elementos por etiqueta."""
    if not same_algebra(D1.skeleton, D2.skeleton):
        return False
    S1, S2 = D1.skeleton, D2.skeleton
    for s, etiqueta in enumerate(S1.labels):
        t = S2.indice(etiqueta)
        if not mismo_bloque(D1.blocks[s], D2.blocks[t]):
            return False
        c1, c2 = D1.lower_cover[s], D2.lower_cover[t]
        if (c1 is None) != (c2 is None):
            return False
        if c1 is not None and S1.labels[c1] != S2.labels[c2]:
            return False
    return True


# ============================================================
# Subsistemas
# ============================================================

def _subalgebra_por_etiquetas(A: FinResLat, B: FinResLat) -> bool:
    """A es subálgebra de B con la inclusión dada por las etiquetas."""
    if not set(A.labels) <= set(B.labels) or A.labels[A.unit] != B.labels[B.unit]:
        return False
    h = [B.indice(e) for e in A.labels]
    if not is_subuniverse(B, h):
        return False
    tablas = ((A.mult, B.mult), (A.ld, B.ld), (A.rd, B.rd), (A.meet, B.meet), (A.join, B.join))
    return all(
        A.leq[x][y] == B.leq[h[x]][h[y]]
        and all(h[ta[x][y]] == tb[h[x]][h[y]] for ta, tb in tablas)
        for x in range(A.n)
        for y in range(A.n)
    )


def is_subsystem(D_A: DecompSystem, D_B: DecompSystem) -> Informe:
    """
    Condiciones: 1 esqueleto subálgebra; 2 bloques negativos subálgebras brouwerianas;
    3 bloques positivos subprerretículos con tope; 4 cubiertas inferiores presentes.
    El resultado se contrasta con la prueba directa de subálgebra sobre las álgebras construidas.
    """
    informe = Informe("subsistema")
    SA, SB = D_A.skeleton, D_B.skeleton
    if not _subalgebra_por_etiquetas(SA, SB):
        informe.agregar("1", SA.labels, "el esqueleto no es subálgebra")
    else:
        for s, bloque_a in enumerate(D_A.blocks):
            etiqueta = SA.labels[s]
            t = SB.indice(etiqueta)
            bloque_b = D_B.blocks[t]
            if not set(bloque_a.labels) <= set(bloque_b.labels):
                condicion = "2" if SB.leq[t][SB.unit] else "3"
                informe.agregar(condicion, (etiqueta,), "el bloque no está contenido")
                continue
            _comparar_bloques(informe, etiqueta, bloque_a, bloque_b, negativo=SB.leq[t][SB.unit])
            if not bloque_a.es_reticulo:
                cubierta = cubierta_inferior(SB, t)
                if cubierta is None or SB.labels[cubierta] not in SA.labels:
                    informe.agregar("4", (etiqueta,), "falta la cubierta inferior en el subesqueleto")
    directo = _subalgebra_por_etiquetas(build_algebra(D_A), build_algebra(D_B))
    if directo != informe.ok:
        raise InconsistenciaInterna(
            f"is_subsystem={informe.ok} pero la prueba directa de subálgebra da {directo}"
        )
    return informe


def _comparar_bloques(informe: Informe, s: str, a: Bloque, b: Bloque, negativo: bool) -> None:
    condicion = "2" if negativo else "3"
    h = [b.indice(e) for e in a.labels]
    for x, y in itertools.product(range(a.n), repeat=2):
        if a.leq[x][y] != b.leq[h[x]][h[y]]:
            informe.agregar(condicion, (s, a.labels[x], a.labels[y]), "el orden no coincide")
            return
        if a.join[x][y] is None or h[a.join[x][y]] != b.join[h[x]][h[y]]:
            informe.agregar(condicion, (s, a.labels[x], a.labels[y]), "el supremo no coincide")
            return
        mb = b.meet[h[x]][h[y]]
        ma = a.meet[x][y]
        if (ma is None) != (mb is None) or (mb is not None and h[ma] != mb):
            informe.agregar(condicion, (s, a.labels[x], a.labels[y]), "el ínfimo no coincide")
            return
        if negativo:
            ia, ib = a.implicacion, b.implicacion
            if ia is None or h[ia[x][y]] != ib[h[x]][h[y]]:
                informe.agregar(condicion, (s, a.labels[x], a.labels[y]), "la implicación no coincide")
                return


# ============================================================
# Subvariedades
# ============================================================

def _exigir_conmutativa(A: FinResLat) -> None:
    _exigir_conica_idempotente(A, "is_sgsm")
    if not is_commutative(A):
        x, y = next(
            (x, y) for x in range(A.n) for y in range(A.n) if A.mult[x][y] != A.mult[y][x]
        )
        raise NotCommutative("el álgebra no es conmutativa", (A.labels[x], A.labels[y]))


def _es_sugihara_impar(S: FinResLat) -> bool:
    return is_commutative(S) and all(inv_r(S, inv_r(S, x)) == x for x in range(S.n))


def is_sgsm(A: FinResLat) -> bool:
    """Monoide de Sugihara generalizado semicónico: esqueleto Sugihara impar y bloques positivos triviales."""
    _exigir_conmutativa(A)
    D = extract_system(A)
    S = D.skeleton
    por_bloques = _es_sugihara_impar(S) and all(
        b.n == 1 for s, b in enumerate(D.blocks) if S.lt(S.unit, s)
    )
    u = A.unit

    def estrella(x: int) -> int:
        return inv_r(A, x)

    por_identidad = all(
        estrella(estrella(A.join[x][u])) == A.join[x][u] for x in range(A.n)
    )
    if por_bloques != por_identidad:
        raise InconsistenciaInterna(f"is_sgsm: bloques={por_bloques}, identidad={por_identidad}")
    return por_identidad


def is_central_sgsm(A: FinResLat) -> bool:
    """Variante central: todos los bloques salvo el de 1 son triviales."""
    _exigir_conmutativa(A)
    D = extract_system(A)
    S = D.skeleton
    por_bloques = _es_sugihara_impar(S) and all(
        b.n == 1 for s, b in enumerate(D.blocks) if s != S.unit
    )
    u = A.unit
    por_identidad = is_sgsm(A) and all(
        A.leq[u][A.join[inv_r(A, inv_r(A, x))][A.ld[inv_r(A, inv_r(A, x))][x]]]
        for x in range(A.n)
    )
    if por_bloques != por_identidad:
        raise InconsistenciaInterna(
            f"is_central_sgsm: bloques={por_bloques}, identidad={por_identidad}"
        )
    return por_identidad


def subvariety_profile(A: FinResLat) -> dict[str, bool]:
    """Pertenencia de un álgebra cónica idempotente a las subvariedades con nombre."""
    from reticulos.congruencias import cocientes_si

    _exigir_conica_idempotente(A, "subvariety_profile")
    rigida = is_rigid(A)
    conjuntiva = is_conjunctive(A)
    distributiva = is_distributive(A)
    conmutativa = is_commutative(A)
    semilineal = all(Q.es_cadena for Q in cocientes_si(A))
    perfil = {
        "R": rigida and conjuntiva,
        "ISL⋆": is_star_involutive(A) and semilineal,
        "DR": distributiva and rigida and conjuntiva,
        "CR": conmutativa and conjuntiva,
        "DCR": distributiva and conmutativa and conjuntiva,
        "SGSM": conmutativa and is_sgsm(A),
        "CSGSM": conmutativa and is_central_sgsm(A),
    }
    return perfil
