"""
cadenas.py — Cadenas residuadas idempotentes: conexiones de Galois, preórdenes monoidales y coronas
====================================================================================================
Tres presentaciones equivalentes de una cadena residuada idempotente:
el álgebra completa (FinResLat), el reducto {∧, ∨, ℓ, r, 1} (IdGaloisConn) y el
preorden monoidal enriquecido (EMP). Además: capas, pares L/R, subálgebras
generadas, coronas verticales y sumas anidadas.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Final, Iterable, Sequence

from reticulos.errores import (
    ErrorReticulo,
    FormatoInvalido,
    InconsistenciaInterna,
    Informe,
    InvalidEMP,
    InvalidIGC,
    NotConfigured,
    NotStarInvolutive,
    SideConditionViolated,
)
from reticulos.nucleo import (
    FinResLat,
    Relacion,
    calcular_inf_sup,
    cubre,
    es_central,
    exigir_cadena_idempotente,
    inv_ell,
    inv_r,
    is_star_involutive,
    partner,
    same_algebra,
    star_low,
    subalgebra,
    subuniverse_closure,
    tablas_parciales,
    verificar_orden_parcial,
)

LOGGER: Final = logging.getLogger(__name__)

IZQUIERDA = "L"
DERECHA = "R"
CENTRAL = "C"

POSITIVA = "+"
NEGATIVA = "-"
TIPOS_CAPA = (NEGATIVA, POSITIVA, IZQUIERDA, DERECHA)


# ============================================================
# Conexiones de Galois idempotentes
# ============================================================

@dataclass(frozen=True)
class IdGaloisConn:
    labels: tuple[str, ...]
    leq: Relacion
    ell: tuple[int, ...]
    r: tuple[int, ...]
    unit: int


def verify_igc(G: IdGaloisConn) -> Informe:
    """
    Condiciones: 1 retículo; 2 1^ℓ = 1^r = 1; 3 identidades de conexión de Galois;
    4 orden total; 5 no hay elementos entre x^ℓ y x^r.
    """
    informe = Informe("conexión de Galois idempotente")
    e = G.labels
    n = len(e)
    try:
        verificar_orden_parcial(G.leq, e)
    except ErrorReticulo as exc:
        informe.agregar("1", exc.testigo or (), str(exc))
        return informe
    meet, join = tablas_parciales(G.leq)
    falta = next(
        ((x, y) for x in range(n) for y in range(n) if meet[x][y] is None or join[x][y] is None),
        None,
    )
    if falta is not None:
        informe.agregar("1", (e[falta[0]], e[falta[1]]), "falta ínfimo o supremo")
    if G.ell[G.unit] != G.unit or G.r[G.unit] != G.unit:
        informe.agregar("2", (e[G.unit],))
    le, ell, r = G.leq, G.ell, G.r
    for x in range(n):
        if not le[x][r[ell[x]]] or not le[x][ell[r[x]]]:
            informe.agregar("3", (e[x],), "x ≤ x^{ℓr} y x ≤ x^{rℓ}")
        if ell[r[ell[x]]] != ell[x] or r[ell[r[x]]] != r[x]:
            informe.agregar("3", (e[x],), "x^{ℓrℓ} = x^ℓ y x^{rℓr} = x^r")
    if falta is None:
        for x, y in itertools.product(range(n), repeat=2):
            if ell[join[x][y]] != meet[ell[x]][ell[y]] or r[join[x][y]] != meet[r[x]][r[y]]:
                informe.agregar("3", (e[x], e[y]), "(x∨y)^ℓ = x^ℓ∧y^ℓ y (x∨y)^r = x^r∧y^r")
            if not (le[y][meet[r[x]][ell[x]]] or le[join[r[x]][ell[x]]][y]):
                informe.agregar("5", (e[x], e[y]), f"{e[y]} queda entre {e[x]}^ℓ y {e[x]}^r")
    for x, y in itertools.combinations(range(n), 2):
        if not (le[x][y] or le[y][x]):
            informe.agregar("4", (e[x], e[y]))
            break
    return informe


def residuated_from_igc(G: IdGaloisConn) -> FinResLat:
    """Álgebra R(C): xy = x∧y si x ≤ y^ℓ, si no x∨y; residuos por casos."""
    verify_igc(G).exigir(InvalidIGC)
    meet, join = calcular_inf_sup(G.leq, G.labels)
    n = len(G.labels)
    le, ell, r = G.leq, G.ell, G.r
    mult = [[meet[x][y] if le[x][ell[y]] else join[x][y] for y in range(n)] for x in range(n)]
    ld = [[join[r[x]][y] if le[x][y] else meet[r[x]][y] for y in range(n)] for x in range(n)]
    rd = [[0] * n for _ in range(n)]
    for x, y in itertools.product(range(n), repeat=2):
        rd[y][x] = join[ell[x]][y] if le[x][y] else meet[ell[x]][y]
    try:
        return FinResLat.desde_tablas(G.labels, G.leq, mult, G.unit, ld, rd)
    except ErrorReticulo as exc:
        raise InconsistenciaInterna(f"R(C) no es un retículo residuado: {exc}") from exc


def igc_reduct(A: FinResLat) -> IdGaloisConn:
    exigir_cadena_idempotente(A, "igc_reduct")
    return IdGaloisConn(
        A.labels,
        A.leq,
        tuple(inv_ell(A, x) for x in range(A.n)),
        tuple(inv_r(A, x) for x in range(A.n)),
        A.unit,
    )


def _funciones_antitonas(n: int) -> list[tuple[int, ...]]:
    return [tuple(sorted(c, reverse=True)) for c in itertools.combinations_with_replacement(range(n), n)]


def igc_without_condition_5(n: int = 5) -> IdGaloisConn:
    """
    Primera estructura sobre la cadena 0 < 1 < … < n-1 que cumple las
    condiciones 1–4 de conexión de Galois idempotente pero no la 5.
    """
    antitonas = _funciones_antitonas(n)
    for u in range(n):
        candidatas = [f for f in antitonas if f[u] == u]
        for ell in candidatas:
            for r in candidatas:
                if not all(x <= r[ell[x]] and x <= ell[r[x]] for x in range(n)):
                    continue
                if any(ell[r[ell[x]]] != ell[x] or r[ell[r[x]]] != r[x] for x in range(n)):
                    continue
                if all(abs(ell[x] - r[x]) <= 1 for x in range(n)):
                    continue
                G = IdGaloisConn(
                    tuple(f"c{i}" for i in range(n)),
                    tuple(tuple(x <= y for y in range(n)) for x in range(n)),
                    ell,
                    r,
                    u,
                )
                if verify_igc(G).condiciones_fallidas() == ["5"]:
                    LOGGER.info("Testigo de la independencia de la condición 5: unidad %d, ℓ=%s, r=%s", u, ell, r)
                    return G
    raise ErrorReticulo(f"no hay estructura de {n} elementos que falle sólo la condición 5")


# ============================================================
# Preorden monoidal
# ============================================================

def monoidal_preorder(A: FinResLat) -> Relacion:
    """x ⊑ y sii xy = x."""
    exigir_cadena_idempotente(A, "monoidal_preorder")
    return tuple(tuple(A.mult[x][y] == x for y in range(A.n)) for x in range(A.n))


def natural_order(A: FinResLat) -> Relacion:
    """x ≤_n y sii xy = yx = x."""
    exigir_cadena_idempotente(A, "natural_order")
    return tuple(
        tuple(A.mult[x][y] == x and A.mult[y][x] == x for y in range(A.n))
        for x in range(A.n)
    )


def check_natural_vs_monoidal(A: FinResLat) -> Informe:
    """x <_n y ⇔ x ⊏ y, y exactamente uno de x⊏y, y⊏x, xy≠yx para x ≠ y."""
    sq = monoidal_preorder(A)
    nat = natural_order(A)
    informe = Informe("orden natural y preorden monoidal")
    for x, y in itertools.permutations(range(A.n), 2):
        estricto_xy = sq[x][y] and not sq[y][x]
        estricto_yx = sq[y][x] and not sq[x][y]
        if nat[x][y] != estricto_xy:
            informe.agregar("natural", (A.labels[x], A.labels[y]))
        no_conmutan = A.mult[x][y] != A.mult[y][x]
        if (estricto_xy, estricto_yx, no_conmutan).count(True) != 1:
            informe.agregar("tricotomía", (A.labels[x], A.labels[y]))
    return informe


# ============================================================
# Preórdenes monoidales enriquecidos
# ============================================================

@dataclass(frozen=True)
class EMP:
    labels: tuple[str, ...]
    sqsub: Relacion
    pplus: frozenset[int]
    pminus: frozenset[int]
    star: tuple[int, ...]
    unit: int

    @property
    def n(self) -> int:
        return len(self.labels)

    def estricto(self, x: int, y: int) -> bool:
        """x ⊏ y."""
        return self.sqsub[x][y] and not self.sqsub[y][x]


def verify_emp(P: EMP) -> Informe:
    """
    Condiciones: 1 preorden; 2 la unidad es el único máximo; 3 ⊑ total en cada cono;
    4 P⁺ ∪ P⁻ = P y P⁺ ∩ P⁻ = {1}; 5 condiciones de la estrella; 6 capas.
    """
    informe = Informe("preorden monoidal enriquecido")
    e, sq, n, u = P.labels, P.sqsub, P.n, P.unit
    for x in range(n):
        if not sq[x][x]:
            informe.agregar("1", (e[x],), "no es reflexivo")
    for x, y, z in itertools.product(range(n), repeat=3):
        if sq[x][y] and sq[y][z] and not sq[x][z]:
            informe.agregar("1", (e[x], e[y], e[z]), "no es transitivo")
            break
    for x in range(n):
        if not sq[x][u] or (x != u and sq[u][x]):
            informe.agregar("2", (e[x],))
    for cono in (P.pplus, P.pminus):
        for x, y in itertools.combinations(sorted(cono), 2):
            if not (sq[x][y] or sq[y][x]):
                informe.agregar("3", (e[x], e[y]))
    if P.pplus | P.pminus != frozenset(range(n)) or P.pplus & P.pminus != {u}:
        informe.agregar("4", (e[u],))
    for x in range(n):
        esperado = _estrella_esperada(P, x)
        if esperado is None or P.star[x] != esperado:
            informe.agregar("5", (e[x],), "estrella mal definida o inexistente")
    for x, y in itertools.combinations(range(n), 2):
        if P.estricto(x, y) or P.estricto(y, x):
            continue
        signos_distintos = (x in P.pplus) != (y in P.pplus) and u not in (x, y)
        mismos_vecinos = all(
            P.estricto(x, z) == P.estricto(y, z) and P.estricto(z, x) == P.estricto(z, y)
            for z in range(n)
        )
        if not (signos_distintos and mismos_vecinos):
            informe.agregar("6", (e[x], e[y]))
    return informe


def _estrella_esperada(P: EMP, x: int) -> int | None:
    if x == P.unit:
        return P.unit
    if x in P.pminus:
        candidatos = [a for a in P.pplus if P.estricto(x, a)]
        minimos = [a for a in candidatos if all(P.sqsub[a][c] for c in candidatos)]
        return minimos[0] if len(minimos) == 1 else None
    candidatos = [b for b in P.pminus if P.estricto(b, x)]
    maximos = [b for b in candidatos if all(P.sqsub[c][b] for c in candidatos)]
    return maximos[0] if len(maximos) == 1 else None


def to_emp(A: FinResLat) -> EMP:
    exigir_cadena_idempotente(A, "to_emp")
    P = EMP(
        A.labels,
        monoidal_preorder(A),
        frozenset(x for x in range(A.n) if A.leq[A.unit][x]),
        frozenset(x for x in range(A.n) if A.leq[x][A.unit]),
        tuple(star_low(A, x) for x in range(A.n)),
        A.unit,
    )
    informe = verify_emp(P)
    if not informe:
        raise InconsistenciaInterna(f"to_emp produjo un EMP inválido: {informe.fallos[0]}")
    return P


def from_emp(P: EMP) -> FinResLat:
    """Cadena residuada idempotente del EMP: orden desde los conos, xy = x si x ⊑ y, si no y."""
    verify_emp(P).exigir(InvalidEMP)
    sq, n = P.sqsub, P.n

    def _menor_igual(x: int, y: int) -> bool:
        if x == y:
            return True
        if x in P.pminus and y in P.pplus:
            return True
        if x in P.pplus and y in P.pminus:
            return False
        if x in P.pminus:
            return sq[x][y]
        return sq[y][x]

    leq = [[_menor_igual(x, y) for y in range(n)] for x in range(n)]
    mult = [[x if sq[x][y] else y for y in range(n)] for x in range(n)]
    A = FinResLat.desde_tablas(P.labels, leq, mult, P.unit)
    if to_emp(A) != P:
        raise InconsistenciaInterna("from_emp y to_emp no son inversas en este EMP")
    return A


# ============================================================
# Capas
# ============================================================

@dataclass(frozen=True)
class Layer:
    kind: str
    positive: str | None = None
    negative: str | None = None

    def etiquetas(self) -> tuple[str, ...]:
        return tuple(e for e in (self.positive, self.negative) if e is not None)

    @property
    def es_par(self) -> bool:
        return self.kind in (IZQUIERDA, DERECHA)


@dataclass(frozen=True)
class LayerSeq:
    """Capas de abajo hacia arriba; la capa {1} queda implícita encima de todas."""
    layers: tuple[Layer, ...]
    unit: str = "1"

    @property
    def codigo(self) -> str:
        return "".join(capa.kind for capa in self.layers)

    @property
    def size(self) -> int:
        return 1 + sum(len(capa.etiquetas()) for capa in self.layers)

    @classmethod
    def desde_codigo(cls, codigo: str) -> "LayerSeq":
        """Etiquetas por defecto: capa i da b{i} (negativo) y a{i} (positivo)."""
        capas = []
        for i, tipo in enumerate(codigo, start=1):
            if tipo == NEGATIVA:
                capas.append(Layer(tipo, negative=f"b{i}"))
            elif tipo == POSITIVA:
                capas.append(Layer(tipo, positive=f"a{i}"))
            elif tipo in (IZQUIERDA, DERECHA):
                capas.append(Layer(tipo, f"a{i}", f"b{i}"))
            else:
                raise FormatoInvalido(f"tipo de capa desconocido: {tipo!r}", (tipo,))
        return cls(tuple(capas))


def secuencia_valida(codigo: str) -> bool:
    """Todo positivo necesita un negativo en una capa inferior: la capa más baja es '-'."""
    return codigo == "" or codigo[0] == NEGATIVA


def layers(P: EMP) -> LayerSeq:
    """Clases de ⊏-incomparabilidad ordenadas de abajo hacia arriba."""
    n = P.n
    clases: list[list[int]] = []
    for x in range(n):
        for clase in clases:
            y = clase[0]
            if not P.estricto(x, y) and not P.estricto(y, x):
                clase.append(x)
                break
        else:
            clases.append([x])
    clases.sort(key=lambda c: sum(P.estricto(z, c[0]) for z in range(n)))
    capas = []
    for clase in clases:
        if clase == [P.unit]:
            continue
        if len(clase) == 1:
            (x,) = clase
            if x in P.pplus:
                capas.append(Layer(POSITIVA, positive=P.labels[x]))
            else:
                capas.append(Layer(NEGATIVA, negative=P.labels[x]))
        elif len(clase) == 2:
            a, b = clase if clase[0] in P.pplus else clase[::-1]
            tipo = IZQUIERDA if P.sqsub[a][b] and P.sqsub[b][a] else DERECHA
            capas.append(Layer(tipo, P.labels[a], P.labels[b]))
        else:
            raise InconsistenciaInterna(f"capa con {len(clase)} elementos")
    return LayerSeq(tuple(capas), P.labels[P.unit])


def emp_from_layers(seq: LayerSeq) -> EMP:
    """EMP de una secuencia de capas; los índices siguen el orden de la cadena."""
    negativos = [(i, c.negative) for i, c in enumerate(seq.layers) if c.negative is not None]
    positivos = [(i, c.positive) for i, c in enumerate(seq.layers) if c.positive is not None]
    tope = len(seq.layers)
    orden = negativos + [(tope, seq.unit)] + positivos[::-1]
    etiquetas = tuple(e for _, e in orden)
    if len(set(etiquetas)) != len(etiquetas):
        raise FormatoInvalido("etiquetas repetidas en la secuencia de capas", etiquetas)
    capa = [i for i, _ in orden]
    unidad = len(negativos)
    n = len(orden)
    pminus = frozenset(range(unidad + 1))
    pplus = frozenset(range(unidad, n))

    def _debajo(x: int, y: int) -> bool:
        if x == y or capa[x] < capa[y]:
            return True
        return capa[x] == capa[y] and seq.layers[capa[x]].kind == IZQUIERDA

    sq = tuple(tuple(_debajo(x, y) for y in range(n)) for x in range(n))
    estrella = []
    for x in range(n):
        if x == unidad:
            estrella.append(unidad)
        elif x in pminus:
            arriba = [a for a in pplus if a != unidad and capa[a] > capa[x]]
            estrella.append(min(arriba, key=capa.__getitem__) if arriba else unidad)
        else:
            abajo = [b for b in pminus if b != unidad and capa[b] < capa[x]]
            if not abajo:
                raise InvalidEMP(
                    f"{etiquetas[x]} no tiene negativo debajo: no existe su estrella",
                    "5",
                    (etiquetas[x],),
                )
            estrella.append(max(abajo, key=capa.__getitem__))
    return EMP(etiquetas, sq, pplus, pminus, tuple(estrella), unidad)


def capa_de(P: EMP) -> dict[str, int]:
    """Índice de capa de cada etiqueta (la unidad ocupa la capa superior)."""
    seq = layers(P)
    resultado = {seq.unit: len(seq.layers)}
    for i, c in enumerate(seq.layers):
        for e in c.etiquetas():
            resultado[e] = i
    return resultado


def upset_star(P: EMP, etiqueta: str) -> frozenset[str]:
    """Elementos en capas iguales o superiores a la de `etiqueta`."""
    capa = capa_de(P)
    return frozenset(e for e, i in capa.items() if i >= capa[etiqueta])


def downset_star(P: EMP, etiqueta: str) -> frozenset[str]:
    capa = capa_de(P)
    return frozenset(e for e, i in capa.items() if i <= capa[etiqueta])


def codigo_capas(A: FinResLat) -> str:
    return layers(to_emp(A)).codigo


def unit_isolated(A: FinResLat) -> bool:
    """
    1 no es inverso de ningún x ≠ 1. En el EMP: la capa inmediatamente debajo
    de la de 1 no tiene negativos.
    """
    exigir_cadena_idempotente(A, "unit_isolated")
    por_inversos = all(
        A.unit not in (inv_ell(A, x), inv_r(A, x)) for x in range(A.n) if x != A.unit
    )
    codigo = codigo_capas(A)
    por_capas = codigo == "" or codigo[-1] == POSITIVA
    if por_inversos != por_capas:
        raise InconsistenciaInterna(
            f"1 aislado en {A!r}: por inversos={por_inversos}, por capas={por_capas}"
        )
    return por_inversos


# ============================================================
# Pares L / R / C
# ============================================================

def classify_pair(A: FinResLat, a: int, b: int) -> str:
    """
    L si ab = a y ba = b; R si ab = b y ba = a; C si a^ℓ = a^r = b.
    Se contrastan las siete caracterizaciones equivalentes de L y de R.
    """
    exigir_cadena_idempotente(A, "classify_pair")
    if a == A.unit and b == A.unit:
        return CENTRAL
    if not (A.lt(A.unit, a) and A.lt(b, A.unit)):
        raise NotConfigured(
            "classify_pair espera a positivo y b negativo",
            (A.labels[a], A.labels[b]),
        )
    def ell(x: int) -> int:
        return inv_ell(A, x)

    def r(x: int) -> int:
        return inv_r(A, x)

    # en un par L o R ninguno de los dos es central
    no_centrales = not es_central(A, a) and not es_central(A, b)
    derecha = [
        A.mult[a][b] == b and A.mult[b][a] == a,
        cubre(A, ell(a), r(a)) and r(a) == b,
        cubre(A, r(b), ell(b)) and ell(b) == a,
        cubre(A, r(r(a)), a) and b == r(a),
        cubre(A, ell(ell(b)), b) and a == ell(b),
        a == ell(r(a)) and no_centrales and b == r(a),
        b == r(ell(b)) and no_centrales and a == ell(b),
    ]
    izquierda = [
        A.mult[a][b] == a and A.mult[b][a] == b,
        cubre(A, r(a), ell(a)) and ell(a) == b,
        cubre(A, ell(b), r(b)) and r(b) == a,
        cubre(A, ell(ell(a)), a) and b == ell(a),
        cubre(A, r(r(b)), b) and a == r(b),
        a == r(ell(a)) and no_centrales and b == ell(a),
        b == ell(r(b)) and no_centrales and a == r(b),
    ]
    for nombre, lista in ((DERECHA, derecha), (IZQUIERDA, izquierda)):
        if any(lista) and not all(lista):
            raise InconsistenciaInterna(
                f"caracterizaciones de {nombre} en desacuerdo para "
                f"({A.labels[a]}, {A.labels[b]}): {lista}"
            )
    if derecha[0]:
        return DERECHA
    if izquierda[0]:
        return IZQUIERDA
    if ell(a) == r(a) == b:
        return CENTRAL
    raise NotConfigured(
        f"({A.labels[a]}, {A.labels[b]}) no forma un par L, R ni C",
        (A.labels[a], A.labels[b]),
    )


# ============================================================
# Subálgebras generadas
# ============================================================

def generate_subalgebra(A: FinResLat, seeds: Iterable[int]) -> frozenset[int]:
    """Menor conjunto con las semillas y 1, cerrado bajo ^⋆ y ^↔ (contrastado con la clausura bruta)."""
    exigir_cadena_idempotente(A, "generate_subalgebra")
    semillas = frozenset(seeds)
    conjunto = set(semillas) | {A.unit}
    pendientes = list(conjunto)
    while pendientes:
        x = pendientes.pop()
        for y in (star_low(A, x), partner(A, x)):
            if y not in conjunto:
                conjunto.add(y)
                pendientes.append(y)
    resultado = frozenset(conjunto)
    bruta = subuniverse_closure(A, semillas)
    if resultado != bruta:
        raise InconsistenciaInterna(
            f"clausura por ⋆ y ↔ {A.etiquetas_de(resultado)} distinta de la bruta {A.etiquetas_de(bruta)}"
        )
    return resultado


# ============================================================
# Coronas verticales
# ============================================================

FINITA = "finite"


@dataclass(frozen=True)
class CrownType:
    kind: str
    n: int | None = None
    L: frozenset[int] = frozenset()


def crown_emp(tipo: CrownType) -> EMP:
    """P_{n,L}: [-b0] ⊕ pares (a_i, b_i) ⊕ [+a_{n+1}] ⊕ 1, con el par i de tipo L si i ∈ L."""
    if tipo.kind != FINITA or tipo.n is None:
        raise ErrorReticulo(f"sólo las coronas finitas son construibles (pedida: {tipo.kind})")
    n = tipo.n
    if n < 0 or not tipo.L <= frozenset(range(1, n + 1)):
        raise ErrorReticulo(f"parámetros de corona inválidos: n={n}, L={sorted(tipo.L)}")
    capas = [Layer(NEGATIVA, negative="b0")]
    for i in range(1, n + 1):
        capas.append(Layer(IZQUIERDA if i in tipo.L else DERECHA, f"a{i}", f"b{i}"))
    capas.append(Layer(POSITIVA, positive=f"a{n + 1}"))
    return emp_from_layers(LayerSeq(tuple(capas)))


def crown(n: int, L: Iterable[int] = ()) -> FinResLat:
    return from_emp(crown_emp(CrownType(FINITA, n, frozenset(L))))


def is_vertical_crown(P: EMP) -> CrownType | None:
    """Reconoce la forma -[LR]*+ de una corona finita."""
    codigo = layers(P).codigo
    if len(codigo) < 2 or codigo[0] != NEGATIVA or codigo[-1] != POSITIVA:
        return None
    medio = codigo[1:-1]
    if any(tipo not in (IZQUIERDA, DERECHA) for tipo in medio):
        return None
    return CrownType(FINITA, len(medio), frozenset(i for i, t in enumerate(medio, start=1) if t == IZQUIERDA))


def crown_decomposition(A: FinResLat) -> tuple[list[int], list[FinResLat]]:
    """
    Parte A \\ {1} en piezas uno-generadas, convexas por capas, cada una una corona.

    Returns:
        (cadena de índices 0..k-1, sumandos en orden de capas)
    """
    exigir_cadena_idempotente(A, "crown_decomposition")
    if not is_star_involutive(A):
        testigo = next(x for x in range(A.n) if star_low(A, star_low(A, x)) != x)
        raise NotStarInvolutive("la cadena no es ⋆-involutiva", (A.labels[testigo],))
    capa = capa_de(to_emp(A))
    restantes = sorted((x for x in range(A.n) if x != A.unit), key=lambda x: (capa[A.labels[x]], x))
    usados: set[int] = set()
    sumandos: list[FinResLat] = []
    for x in restantes:
        if x in usados:
            continue
        pieza = generate_subalgebra(A, {x}) - {A.unit}
        if pieza & usados:
            raise InconsistenciaInterna("dos subálgebras uno-generadas se cortan fuera de 1")
        usados |= pieza
        S = subalgebra(A, pieza)
        if is_vertical_crown(to_emp(S)) is None:
            raise InconsistenciaInterna(f"la pieza {S.labels} no es una corona")
        sumandos.append(S)
    indices = list(range(len(sumandos)))
    if sumandos and not same_algebra(nested_sum(indices, sumandos), A):
        raise InconsistenciaInterna("la suma anidada de las coronas no reconstruye el álgebra")
    LOGGER.debug("Descomposición en coronas de %r: %s", A, [codigo_capas(S) for S in sumandos])
    return indices, sumandos


# ============================================================
# Sumas anidadas
# ============================================================

def _condicion_lateral(S: FinResLat, indice: int) -> None:
    """Sin a ≠ 1 con a^ℓ = 1 o a^r = 1, y sin a, b ≠ 1 con a∨b = 1 o a∧b = 1."""
    u = S.unit
    for a in range(S.n):
        if a != u and u in (inv_ell(S, a), inv_r(S, a)):
            raise SideConditionViolated(
                f"el sumando {indice} tiene un inverso igual a 1",
                indice,
                (S.labels[a],),
            )
    for a, b in itertools.combinations(range(S.n), 2):
        if u not in (a, b) and u in (S.join[a][b], S.meet[a][b]):
            raise SideConditionViolated(
                f"el sumando {indice} tiene un par con supremo o ínfimo 1",
                indice,
                (S.labels[a], S.labels[b]),
            )


def nested_sum(indices: Sequence, summands: Sequence[FinResLat | EMP]) -> FinResLat | EMP:
    """
    Suma anidada sobre la cadena de índices: a_i • a_j = a_i • 1 y
    a_j • a_i = 1 • a_i para i < j, para cada operación •. Los sumandos se
    ordenan por su índice; el de índice menor queda afuera.
    """
    if len(indices) != len(summands) or not summands:
        raise ErrorReticulo("la cadena de índices y los sumandos deben tener el mismo largo, no nulo")
    if len(set(indices)) != len(indices):
        raise ErrorReticulo("índices repetidos en la cadena de índices", tuple(map(str, indices)))
    orden = sorted(range(len(indices)), key=lambda k: indices[k])
    indices = [indices[k] for k in orden]
    summands = [summands[k] for k in orden]
    if all(isinstance(S, EMP) for S in summands):
        return _suma_emp(indices, summands)
    if not all(isinstance(S, FinResLat) for S in summands):
        raise ErrorReticulo("los sumandos deben ser todos FinResLat o todos EMP")
    return _suma_algebras(indices, summands)


def _suma_algebras(indices: Sequence, sumandos: Sequence[FinResLat]) -> FinResLat:
    for i, S in zip(indices, sumandos[:-1]):
        _condicion_lateral(S, i)
    elementos = [(i, x) for i, S in enumerate(sumandos) for x in range(S.n) if x != S.unit]
    etiquetas = [sumandos[i].labels[x] for i, x in elementos]
    primero = sumandos[0]
    etiquetas.append(primero.labels[primero.unit])
    if len(set(etiquetas)) != len(etiquetas):
        raise FormatoInvalido("etiquetas repetidas entre sumandos", tuple(etiquetas))
    unidad = len(elementos)
    global_de = {p: k for k, p in enumerate(elementos)}

    def _local(k: int, i: int) -> int | None:
        if k == unidad:
            return sumandos[i].unit
        j, x = elementos[k]
        return x if j == i else None

    def _indice_sumando(k: int) -> int | None:
        return None if k == unidad else elementos[k][0]

    def _volver(i: int, x: int) -> int:
        return unidad if x == sumandos[i].unit else global_de[(i, x)]

    def _operar(tabla: str, k: int, m: int) -> int:
        i, j = _indice_sumando(k), _indice_sumando(m)
        if i is None and j is None:
            return unidad
        if i is None or j is None or i == j:
            s = i if i is not None else j
            S = sumandos[s]
            return _volver(s, getattr(S, tabla)[_local(k, s)][_local(m, s)])
        s = min(i, j)
        S = sumandos[s]
        if i < j:
            return _volver(s, getattr(S, tabla)[_local(k, s)][S.unit])
        return _volver(s, getattr(S, tabla)[S.unit][_local(m, s)])

    def _menor_igual(k: int, m: int) -> bool:
        if k == m:
            return True
        i, j = _indice_sumando(k), _indice_sumando(m)
        if i is None or j is None or i == j:
            s = i if i is not None else j
            return sumandos[s].leq[_local(k, s)][_local(m, s)]
        if i < j:
            S = sumandos[i]
            return S.leq[_local(k, i)][S.unit]
        S = sumandos[j]
        return S.leq[S.unit][_local(m, j)]

    total = unidad + 1
    rango = range(total)
    try:
        return FinResLat.desde_tablas(
            etiquetas,
            [[_menor_igual(k, m) for m in rango] for k in rango],
            [[_operar("mult", k, m) for m in rango] for k in rango],
            unidad,
            [[_operar("ld", k, m) for m in rango] for k in rango],
            [[_operar("rd", k, m) for m in rango] for k in rango],
        )
    except ErrorReticulo as exc:
        raise InconsistenciaInterna(f"la suma anidada no es un retículo residuado: {exc}") from exc


def _suma_emp(indices: Sequence, sumandos: Sequence[EMP]) -> EMP:
    algebras = [from_emp(P) for P in sumandos]
    for i, S in zip(indices, algebras[:-1]):
        _condicion_lateral(S, i)
    capas: list[Layer] = []
    for P in sumandos:
        capas.extend(layers(P).layers)
    P = emp_from_layers(LayerSeq(tuple(capas), sumandos[0].labels[sumandos[0].unit]))
    if not same_algebra(from_emp(P), _suma_algebras(indices, algebras)):
        raise InconsistenciaInterna("la suma de EMPs no coincide con la suma de las álgebras")
    return P
