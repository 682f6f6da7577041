"""
busqueda.py — Búsqueda acotada y exhaustiva de amalgamas y 1-amalgamas
=======================================================================
Una amalgama cónica idempotente D queda determinada por su esqueleto (una cadena
cuasi-involutiva) y un bloque por elemento del esqueleto. La búsqueda recorre:

  1. esqueletos de D por tamaño y en el orden de los códigos de capas;
  2. las incrustaciones de los esqueletos de C y de B que preservan ℓ, r, 1 y el
     orden, coincidiendo sobre el esqueleto de A (para B, homomorfismos monótonos
     en modo 1-amalgama);
  3. las cubiertas inferiores forzadas por los bloques que son prerretículos propios;
  4. para cada s de D, el bloque más chico del catálogo que recibe los bloques de
     B y de C que caen en s.

Cada candidato completo se arma con build_algebra y se certifica con verify_amalgam.
Las razones de descarte se cuentan por nombre.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Final, Iterator

from reticulos.amalgamas import AmalgamCert, VFormation, _es_fuerte, reduce_vformation, verify_amalgam
from reticulos.config import CATALOGO_MAX, mapear_en_paralelo
from reticulos.congruencias import is_fsi
from reticulos.descomposicion import Bloque, build_algebra, sistema
from reticulos.enumeracion import (
    CadenaRapida,
    _bloque,
    cadena_rapida,
    catalogo_cadenas,
    catalogo_distributivos,
    catalogo_prerreticulos,
    esqueletos_posibles,
)
from reticulos.errores import ErrorReticulo
from reticulos.nucleo import FinResLat, blocks, gamma, inv_ell, inv_r, renombrar

LOGGER: Final = logging.getLogger(__name__)

CLASE_CADENAS = "chains"
CLASE_CONICAS = "conic"
CLASE_FSI = "conic-fsi"
CLASES_BUSQUEDA = (CLASE_CADENAS, CLASE_CONICAS, CLASE_FSI)

# Razones de descarte
CLASE = "clase"
ORDEN = "orden"
OPERACION = "operacion"
ACUERDO = "acuerdo"
CUBIERTA = "cubierta"
BLOQUE = "bloque"
TAMANO = "tamano"
CERTIFICADO = "certificado"

# Combinaciones de bloques que se intentan certificar por esqueleto
MAX_COMBINACIONES = 256


@dataclass(frozen=True)
class ResultadoBusqueda:
    certificado: AmalgamCert | None
    cota: int
    clase: str
    one_sided: bool
    eliminados: dict[str, int] = field(default_factory=dict)
    esqueletos: int = 0
    completa: bool = True

    @property
    def encontrada(self) -> bool:
        return self.certificado is not None


# ============================================================
# Datos de cada lado de la formación
# ============================================================

@dataclass(frozen=True)
class _Lado:
    """B o C visto desde su sistema de descomposición, con el esqueleto en posiciones."""
    X: FinResLat
    esqueleto: tuple[int, ...]
    ell: tuple[int, ...]
    r: tuple[int, ...]
    unidad: int
    bloques: tuple[tuple[int, ...], ...]
    propio: tuple[bool, ...]
    gamma_pos: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.esqueleto)

    def es_tope(self, x: int) -> bool:
        return self.esqueleto[self.gamma_pos[x]] == x


def _lado(X: FinResLat) -> _Lado:
    fibras = blocks(X)
    esqueleto = tuple(sorted(fibras, key=X.posicion.__getitem__))
    pos = {s: p for p, s in enumerate(esqueleto)}
    propio = tuple(
        any(X.meet[x][y] not in fibras[s] for x, y in itertools.combinations(fibras[s], 2))
        for s in esqueleto
    )
    return _Lado(
        X=X,
        esqueleto=esqueleto,
        ell=tuple(pos[inv_ell(X, s)] for s in esqueleto),
        r=tuple(pos[inv_r(X, s)] for s in esqueleto),
        unidad=pos[X.unit],
        bloques=tuple(fibras[s] for s in esqueleto),
        propio=propio,
        gamma_pos=tuple(pos[gamma(X, x)] for x in range(X.n)),
    )


@dataclass(frozen=True)
class _Contexto:
    V: VFormation
    clase: str
    cota: int
    one_sided: bool
    B: _Lado
    C: _Lado
    # posición en el esqueleto de B → posición en el esqueleto de C, para los de A
    comunes: tuple[tuple[int, int], ...]
    # índice en C → índice en B, para todos los elementos de A
    elementos_a: tuple[tuple[int, int], ...]


# ============================================================
# Esqueletos
# ============================================================

def _mapas_esqueleto(
    lado: _Lado,
    S: CadenaRapida,
    fijos: dict[int, int],
    estricto: bool,
    eliminados: Counter,
) -> Iterator[tuple[int, ...]]:
    """Mapas monótonos (estrictos si se pide) del esqueleto del lado en S que preservan ℓ, r y 1."""
    g: list[int] = [-1] * lado.m

    def _coherente(p: int) -> bool:
        for q in range(p + 1):
            for f_lado, f_s in ((lado.ell, S.ell), (lado.r, S.r)):
                destino = f_lado[q]
                if destino <= p and g[destino] != f_s[g[q]]:
                    return False
        return True

    def _buscar(p: int) -> Iterator[tuple[int, ...]]:
        if p == lado.m:
            yield tuple(g)
            return
        desde = 0 if p == 0 else g[p - 1] + (1 if estricto else 0)
        hasta = S.n - (lado.m - p) if estricto else S.n - 1
        if p in fijos:
            candidatos = [fijos[p]] if desde <= fijos[p] <= hasta else []
            razon = ACUERDO
        elif p == lado.unidad:
            candidatos = [S.unidad] if desde <= S.unidad <= hasta else []
            razon = ORDEN
        else:
            candidatos = range(desde, hasta + 1)
            razon = ORDEN
        if not candidatos:
            eliminados[razon] += 1
            return
        for d in candidatos:
            g[p] = d
            if _coherente(p):
                yield from _buscar(p + 1)
            else:
                eliminados[OPERACION] += 1
        g[p] = -1

    yield from _buscar(0)


def _cubiertas_forzadas(lado: _Lado, g: tuple[int, ...]) -> bool:
    """
    Si b1 ∧ b2 cae fuera del bloque de s, la imagen debe tener como cubierta
    inferior la imagen de la cubierta de s (o colapsar ambas).
    """
    for p in range(1, lado.m):
        if lado.propio[p] and g[p - 1] != g[p] and g[p] - 1 != g[p - 1]:
            return False
    return True


# ============================================================
# Bloques
# ============================================================

def _catalogo(ctx: _Contexto, S: CadenaRapida, t: int, k: int) -> tuple:
    if not S.es_central(t) and k > 1:
        return ()
    if ctx.clase == CLASE_CADENAS:
        catalogo = catalogo_cadenas(k)
    elif t <= S.unidad:
        catalogo = catalogo_distributivos(k)
    else:
        catalogo = catalogo_prerreticulos(k)
    if ctx.clase == CLASE_FSI and t == S.unidad:
        catalogo = tuple(leq for leq in catalogo if _coatomos(leq) <= 1)
    return catalogo


def _coatomos(leq) -> int:
    """Elementos cubiertos por el tope (índice 0 en el catálogo)."""
    debajo = range(1, len(leq))
    return sum(1 for x in debajo if not any(leq[x][y] and y != x for y in debajo))


def _mapas_bloque(
    lado: _Lado,
    elementos: tuple[int, ...],
    T: Bloque,
    inyectivo: bool,
    fijos: dict[int, int],
    es_unidad: bool,
    negativo: bool,
) -> Iterator[dict[int, int]]:
    """
    Mapas de los elementos de X que caen en el bloque T: topes en el tope,
    supremos preservados, ínfimos definidos sólo cuando lo están en X y, dentro
    de un mismo bloque de X, la implicación o la reflexión del orden.
    """
    X = lado.X
    conjunto = frozenset(elementos)
    orden = sorted(elementos, key=lambda x: -X.posicion[x])
    h: dict[int, int] = {}

    def _par(u: int, v: int) -> bool:
        hu, hv = h[u], h[v]
        if X.leq[u][v] and not T.leq[hu][hv]:
            return False
        j = X.join[u][v]
        if j in h and h[j] != T.join[hu][hv]:
            return False
        m = X.meet[u][v]
        if m in conjunto:
            if m in h and h[m] != T.meet[hu][hv]:
                return False
        elif T.meet[hu][hv] is not None:
            return False
        if X.leq[u][v] or lado.gamma_pos[u] != lado.gamma_pos[v]:
            return True
        if not negativo:
            return not T.leq[hu][hv]
        z = X.ld[u][v]
        if z not in h:
            return True
        if T.leq[hu][hv]:
            return es_unidad and h[z] == T.top
        return h[z] == T.implicacion[hu][hv]

    def _compatible(x: int) -> bool:
        return all(_par(x, y) and _par(y, x) for y in h)

    def _buscar(i: int) -> Iterator[dict[int, int]]:
        if i == len(orden):
            if all(_par(u, v) for u in h for v in h):
                yield dict(h)
            return
        x = orden[i]
        if x in fijos:
            candidatos = [fijos[x]]
        elif lado.es_tope(x):
            candidatos = [T.top]
        else:
            candidatos = range(T.n)
        usados = set(h.values())
        for t in candidatos:
            if inyectivo and t in usados:
                continue
            h[x] = t
            if _compatible(x):
                yield from _buscar(i + 1)
            del h[x]

    yield from _buscar(0)


def _preimagen(lado: _Lado, g: tuple[int, ...], t: int) -> tuple[int, ...]:
    return tuple(x for p in range(lado.m) if g[p] == t for x in lado.bloques[p])


def _soluciones_bloque(
    ctx: _Contexto,
    S: CadenaRapida,
    t: int,
    pre_b: tuple[int, ...],
    pre_c: tuple[int, ...],
    limite: int,
) -> tuple[int, list[tuple[Bloque, dict[int, int], dict[int, int]]]]:
    """
    Bloques mínimos para la posición t de D, con todos los pares de mapas.
    Devuelve (tamaño, soluciones); sin soluciones hasta `limite`, (limite + 1, []).
    """
    inyectivo_b = not ctx.one_sided
    minimo = max(len(pre_c), len(pre_b) if inyectivo_b else 1, 1)
    negativo = t <= S.unidad
    es_unidad = t == S.unidad
    en_b = frozenset(pre_b)
    for k in range(minimo, limite + 1):
        soluciones = []
        for leq in _catalogo(ctx, S, t, k):
            T = _bloque(leq, S.etiquetas[t])
            for hC in _mapas_bloque(ctx.C, pre_c, T, True, {}, es_unidad, negativo):
                fijos = {b: hC[c] for c, b in ctx.elementos_a if c in hC and b in en_b}
                for hB in _mapas_bloque(ctx.B, pre_b, T, inyectivo_b, fijos, es_unidad, negativo):
                    soluciones.append((T, hB, hC))
                    if len(soluciones) >= MAX_COMBINACIONES:
                        return k, soluciones
        if soluciones:
            return k, soluciones
    return limite + 1, []


# ============================================================
# Armado y certificación
# ============================================================

def _armar(
    ctx: _Contexto,
    S: CadenaRapida,
    gB: tuple[int, ...],
    gC: tuple[int, ...],
    eleccion: tuple[tuple[Bloque, dict[int, int], dict[int, int]], ...],
) -> AmalgamCert | None:
    bloques = {S.etiquetas[t]: T for t, (T, _, _) in enumerate(eleccion) if T.n > 1}
    D = build_algebra(sistema(S.algebra(), bloques))

    def _imagen(lado: _Lado, g: tuple[int, ...], indice: int) -> tuple[int, ...]:
        resultado = []
        for x in range(lado.X.n):
            t = g[lado.gamma_pos[x]]
            T, mapa = eleccion[t][0], eleccion[t][indice]
            resultado.append(D.indice(T.labels[mapa[x]]))
        return tuple(resultado)

    if ctx.clase == CLASE_FSI and not is_fsi(D):
        return None
    cand = AmalgamCert(D, _imagen(ctx.B, gB, 1), _imagen(ctx.C, gC, 2), strong=False)
    if not verify_amalgam(ctx.V, cand, ctx.one_sided):
        return None
    return _etiquetar_amalgama(ctx.V, cand)


def _etiquetar_amalgama(V: VFormation, cand: AmalgamCert) -> AmalgamCert:
    """D con las etiquetas de C y de B en sus imágenes y el prefijo d: en el resto."""
    nombres: dict[str, str] = {}
    for x, d in enumerate(cand.gB):
        nombres.setdefault(cand.D.labels[d], V.B.labels[x])
    for x, d in enumerate(cand.gC):
        nombres[cand.D.labels[d]] = V.C.labels[x]
    for e in cand.D.labels:
        nombres.setdefault(e, f"d:{e}")
    D = renombrar(cand.D, nombres)
    return replace(cand, D=D, strong=_es_fuerte(V, cand.gB, cand.gC))


def _explorar_esqueleto(tarea: tuple[_Contexto, str]) -> tuple[AmalgamCert | None, Counter, bool]:
    """Todos los candidatos con un esqueleto dado; devuelve el primero certificado."""
    ctx, codigo = tarea
    S = cadena_rapida(codigo)
    eliminados: Counter = Counter()
    completa = True
    limite_bloque = ctx.cota - S.n + 1
    techo = min(CATALOGO_MAX, limite_bloque)
    cache: dict[tuple, tuple[int, list]] = {}

    for gC in _mapas_esqueleto(ctx.C, S, {}, True, eliminados):
        fijos = {pb: gC[pc] for pb, pc in ctx.comunes}
        for gB in _mapas_esqueleto(ctx.B, S, fijos, not ctx.one_sided, eliminados):
            if not (_cubiertas_forzadas(ctx.B, gB) and _cubiertas_forzadas(ctx.C, gC)):
                eliminados[CUBIERTA] += 1
                continue
            por_bloque = []
            total = 0
            for t in range(S.n):
                pre_b, pre_c = _preimagen(ctx.B, gB, t), _preimagen(ctx.C, gC, t)
                clave = (t, pre_b, pre_c)
                if clave not in cache:
                    cache[clave] = _soluciones_bloque(ctx, S, t, pre_b, pre_c, techo)
                k, soluciones = cache[clave]
                if not soluciones:
                    if techo < limite_bloque:
                        completa = False
                    break
                por_bloque.append(soluciones)
                total += k
            else:
                if total > ctx.cota:
                    eliminados[TAMANO] += 1
                    continue
                for eleccion in itertools.islice(itertools.product(*por_bloque), MAX_COMBINACIONES):
                    cert = _armar(ctx, S, gB, gC, eleccion)
                    if cert is not None:
                        return cert, eliminados, completa
                eliminados[CERTIFICADO] += 1
                completa = False
                continue
            eliminados[BLOQUE] += 1
    return None, eliminados, completa


# ============================================================
# Entrada
# ============================================================

def _en_clase(X: FinResLat, clase: str) -> bool:
    if not (X.es_idempotente and X.es_conica):
        return False
    if clase == CLASE_CADENAS:
        return X.es_cadena
    return clase != CLASE_FSI or is_fsi(X)


def search_amalgam_detallado(
    V: VFormation,
    clase: str,
    cota: int,
    one_sided: bool = False,
) -> ResultadoBusqueda:
    """
    Búsqueda exhaustiva de una amalgama (o 1-amalgama) de la clase con |D| ≤ cota.
    Los esqueletos de cada tamaño se reparten entre procesos y se reducen en orden.
    `completa` es False si algún bloque necesitaba más elementos que el catálogo.
    """
    if clase not in CLASES_BUSQUEDA:
        raise ErrorReticulo(f"clase de búsqueda desconocida: {clase}", (clase,))
    V = reduce_vformation(V)
    if not (_en_clase(V.B, clase) and _en_clase(V.C, clase)):
        LOGGER.info("B o C fuera de la clase %s: no hay amalgama en la clase", clase)
        return ResultadoBusqueda(None, cota, clase, one_sided, {CLASE: 1})
    B, C = _lado(V.B), _lado(V.C)
    comunes = tuple(
        (B.esqueleto.index(V.B.indice(e)), C.esqueleto.index(V.C.indice(e)))
        for e in V.A.labels
        if V.B.indice(e) in B.esqueleto
    )
    elementos_a = tuple((V.C.indice(e), V.B.indice(e)) for e in V.A.labels)
    ctx = _Contexto(V, clase, cota, one_sided, B, C, comunes, elementos_a)

    extra_c = V.C.n - C.m
    extra_b = 0 if one_sided else V.B.n - B.m
    desde = C.m if one_sided else max(B.m, C.m)
    hasta = cota - max(extra_b, extra_c)
    eliminados: Counter = Counter()
    completa = True
    esqueletos = 0
    for m in range(desde, hasta + 1):
        codigos = [S.codigo for S in esqueletos_posibles(m)]
        esqueletos += len(codigos)
        LOGGER.debug("Esqueletos de tamaño %d: %d", m, len(codigos))
        for cert, parcial, completo in mapear_en_paralelo(_explorar_esqueleto, [(ctx, c) for c in codigos]):
            eliminados.update(parcial)
            completa = completa and completo
            if cert is not None:
                LOGGER.info("Amalgama encontrada: |D| = %d, esqueleto de %d elementos", cert.D.n, m)
                return ResultadoBusqueda(cert, cota, clase, one_sided, dict(eliminados), esqueletos, completa)
    LOGGER.info(
        "Sin amalgama %s hasta %d (%d esqueletos; descartes: %s)",
        clase, cota, esqueletos, dict(eliminados),
    )
    return ResultadoBusqueda(None, cota, clase, one_sided, dict(eliminados), esqueletos, completa)


def search_amalgam(V: VFormation, clase: str, cota: int, one_sided: bool = False) -> AmalgamCert | None:
    return search_amalgam_detallado(V, clase, cota, one_sided).certificado
