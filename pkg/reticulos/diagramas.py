"""
diagramas.py — Diagramas en DOT (Graphviz)
==========================================
Tres vistas, todas con orden de nodos estable:
  - hasse: coberturas de abajo hacia arriba;
  - emp: preorden monoidal en dos columnas (positivos y la unidad a la izquierda),
    una fila por capa;
  - flow: flechas sólidas x → x^r y punteadas x → x^ℓ; cuadrados para los
    elementos no centrales, círculos para los centrales.
"""

import logging
from typing import Final

from reticulos.cadenas import EMP, IZQUIERDA, from_emp, layers, to_emp
from reticulos.errores import ErrorReticulo
from reticulos.nucleo import FinResLat, coberturas_de, es_central, inv_ell, inv_r

LOGGER: Final = logging.getLogger(__name__)

HASSE = "hasse"
VISTA_EMP = "emp"
FLUJO = "flow"
VISTAS = (HASSE, VISTA_EMP, FLUJO)


def _q(etiqueta: str) -> str:
    return '"' + etiqueta.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _encabezado(nombre: str) -> list[str]:
    return [f"digraph {_q(nombre)} {{", "  rankdir=BT;", "  node [fontsize=11];"]


# ── Vistas ──

def hasse(A: FinResLat, nombre: str = "A") -> str:
    lineas = _encabezado(nombre)
    for x in A.orden_lineal:
        forma = "doublecircle" if x == A.unit else "circle"
        lineas.append(f"  {_q(A.labels[x])} [shape={forma}];")
    for x, y in coberturas_de(A.leq):
        lineas.append(f"  {_q(A.labels[x])} -> {_q(A.labels[y])} [arrowhead=none];")
    lineas.append("}")
    return "\n".join(lineas) + "\n"


def emp(P: EMP, nombre: str = "P") -> str:
    seq = layers(P)
    lineas = _encabezado(nombre)
    lineas.append("  newrank=true;")
    filas = [[capa.positive, capa.negative] for capa in seq.layers] + [[seq.unit, None]]
    for i, (positivo, negativo) in enumerate(filas):
        miembros = [e for e in (positivo, negativo) if e is not None]
        for e in miembros:
            signo = "+" if e == positivo else "-"
            lineas.append(f"  {_q(e)} [shape=circle, xlabel={_q(signo)}];")
        lineas.append(f"  {{ rank=same; {' '.join(_q(e) for e in miembros)} }}")
        if i < len(seq.layers) and seq.layers[i].es_par:
            estilo = "dir=both" if seq.layers[i].kind == IZQUIERDA else "dir=none, style=dotted"
            lineas.append(f"  {_q(positivo)} -> {_q(negativo)} [{estilo}, constraint=false];")
    # columnas: positivos (y la unidad) a la izquierda, negativos a la derecha
    for lado in (0, 1):
        columna = [fila[lado] for fila in filas if fila[lado] is not None]
        for abajo, arriba in zip(columna, columna[1:]):
            lineas.append(f"  {_q(abajo)} -> {_q(arriba)} [arrowhead=none];")
    lineas.append("}")
    return "\n".join(lineas) + "\n"


def flow(A: FinResLat, nombre: str = "A") -> str:
    lineas = _encabezado(nombre)
    for x in A.orden_lineal:
        forma = "circle" if es_central(A, x) else "square"
        lineas.append(f"  {_q(A.labels[x])} [shape={forma}];")
    for x in A.orden_lineal:
        lineas.append(f"  {_q(A.labels[x])} -> {_q(A.labels[inv_r(A, x)])};")
        lineas.append(f"  {_q(A.labels[x])} -> {_q(A.labels[inv_ell(A, x)])} [style=dashed];")
    lineas.append("}")
    return "\n".join(lineas) + "\n"


def render(objeto: FinResLat | EMP, vista: str, nombre: str = "") -> str:
    if vista not in VISTAS:
        raise ErrorReticulo(f"vista desconocida: {vista!r} (disponibles: {', '.join(VISTAS)})", (vista,))
    if vista == VISTA_EMP:
        P = objeto if isinstance(objeto, EMP) else to_emp(objeto)
        return emp(P, nombre or "P")
    A = from_emp(objeto) if isinstance(objeto, EMP) else objeto
    LOGGER.debug("Dibujando %r en vista %s", A, vista)
    return hasse(A, nombre or "A") if vista == HASSE else flow(A, nombre or "A")
