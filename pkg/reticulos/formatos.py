"""
formatos.py — Lectura y escritura de álgebras y preórdenes monoidales
=====================================================================
Dos formatos:
  - JSON (AlgebraFile): name, kind ∈ {table, emp}, elements, unit, covers y mult
    indexada por etiquetas; para kind=emp, las capas en lugar de la tabla.
  - Texto .emp: una capa por línea de arriba hacia abajo, con la gramática
    "+x" | "-x" | "+x -y L" | "+x -y R"; la primera línea nombra la unidad ("+1").
Una ruta de la forma "lib:NOMBRE:p1:p2" se resuelve en la biblioteca.
"""

import json
import logging
from pathlib import Path
from typing import Final

from reticulos.biblioteca import desde_referencia, es_referencia
from reticulos.cadenas import (
    DERECHA,
    EMP,
    IZQUIERDA,
    NEGATIVA,
    POSITIVA,
    Layer,
    LayerSeq,
    emp_from_layers,
    from_emp,
    layers,
)
from reticulos.errores import ErrorReticulo, FormatoInvalido
from reticulos.nucleo import FinResLat, coberturas_de, orden_desde_coberturas

LOGGER: Final = logging.getLogger(__name__)

TIPO_TABLA = "table"
TIPO_EMP = "emp"
EXTENSION_EMP = ".emp"


# ============================================================
# Texto .emp
# ============================================================

def _capa_a_linea(capa: Layer) -> str:
    if capa.es_par:
        return f"+{capa.positive} -{capa.negative} {capa.kind}"
    if capa.kind == POSITIVA:
        return f"+{capa.positive}"
    return f"-{capa.negative}"


def emp_a_lineas(P: EMP) -> list[str]:
    seq = layers(P)
    return [f"+{seq.unit}"] + [_capa_a_linea(c) for c in reversed(seq.layers)]


def emp_a_texto(P: EMP) -> str:
    return "\n".join(emp_a_lineas(P)) + "\n"


def _linea_a_capa(linea: str, numero: int) -> Layer:
    partes = linea.split()
    if len(partes) == 1:
        token = partes[0]
        if len(token) < 2 or token[0] not in (POSITIVA, NEGATIVA):
            raise FormatoInvalido(f"línea {numero}: se esperaba '+x' o '-x', no {linea!r}", (linea,))
        if token[0] == POSITIVA:
            return Layer(POSITIVA, positive=token[1:])
        return Layer(NEGATIVA, negative=token[1:])
    if len(partes) == 3:
        positivo, negativo, tipo = partes
        if (
            not positivo.startswith(POSITIVA)
            or not negativo.startswith(NEGATIVA)
            or tipo not in (IZQUIERDA, DERECHA)
            or len(positivo) < 2
            or len(negativo) < 2
        ):
            raise FormatoInvalido(f"línea {numero}: se esperaba '+x -y L' o '+x -y R', no {linea!r}", (linea,))
        return Layer(tipo, positivo[1:], negativo[1:])
    raise FormatoInvalido(f"línea {numero}: formato de capa inválido: {linea!r}", (linea,))


def capas_desde_lineas(lineas: list[str]) -> LayerSeq:
    """Las líneas vacías y las que empiezan con # se ignoran."""
    utiles = [
        (i, l.strip()) for i, l in enumerate(lineas, start=1) if l.strip() and not l.strip().startswith("#")
    ]
    if not utiles:
        raise FormatoInvalido("archivo .emp vacío")
    numero, primera = utiles[0]
    if not primera.startswith(POSITIVA) or len(primera.split()) != 1 or len(primera) < 2:
        raise FormatoInvalido(f"línea {numero}: la primera línea debe nombrar la unidad como '+1'", (primera,))
    capas = [_linea_a_capa(linea, i) for i, linea in utiles[1:]]
    return LayerSeq(tuple(reversed(capas)), primera[1:])


def emp_desde_texto(texto: str) -> EMP:
    return emp_from_layers(capas_desde_lineas(texto.splitlines()))


# ============================================================
# JSON
# ============================================================

def algebra_a_dict(A: FinResLat, nombre: str = "") -> dict:
    e = A.labels
    return {
        "name": nombre,
        "kind": TIPO_TABLA,
        "elements": list(e),
        "unit": e[A.unit],
        "covers": [[e[x], e[y]] for x, y in coberturas_de(A.leq)],
        "mult": {e[x]: {e[y]: e[A.mult[x][y]] for y in range(A.n)} for x in range(A.n)},
    }


def emp_a_dict(P: EMP, nombre: str = "") -> dict:
    return {
        "name": nombre,
        "kind": TIPO_EMP,
        "elements": list(P.labels),
        "unit": P.labels[P.unit],
        "layers": emp_a_lineas(P)[1:],
    }


def a_json(objeto: FinResLat | EMP, nombre: str = "") -> str:
    datos = emp_a_dict(objeto, nombre) if isinstance(objeto, EMP) else algebra_a_dict(objeto, nombre)
    return json.dumps(datos, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def _exigir_campos(datos: dict, campos: tuple[str, ...]) -> None:
    faltantes = [c for c in campos if c not in datos]
    if faltantes:
        raise FormatoInvalido(f"faltan campos en el archivo: {', '.join(faltantes)}", tuple(faltantes))


def _exigir_textos(valor, campo: str) -> list[str]:
    if not isinstance(valor, list) or not all(isinstance(e, str) for e in valor):
        raise FormatoInvalido(f"'{campo}' debe ser una lista de etiquetas", (campo,))
    return valor


def _exigir_pares(valor, campo: str) -> list[tuple[str, str]]:
    if not isinstance(valor, list) or not all(
        isinstance(par, list) and len(par) == 2 and all(isinstance(e, str) for e in par) for par in valor
    ):
        raise FormatoInvalido(f"'{campo}' debe ser una lista de pares [menor, mayor]", (campo,))
    return [(menor, mayor) for menor, mayor in valor]


def _exigir_tabla(valor, campo: str) -> dict[str, dict[str, str]]:
    if not isinstance(valor, dict) or not all(isinstance(fila, dict) for fila in valor.values()):
        raise FormatoInvalido(f"'{campo}' debe ser un objeto de objetos por etiqueta", (campo,))
    return valor


def _exigir_etiqueta(valor, campo: str) -> str:
    if not isinstance(valor, str):
        raise FormatoInvalido(f"'{campo}' debe ser una etiqueta", (campo,))
    return valor


def _algebra_desde_dict(datos: dict) -> FinResLat | EMP:
    tipo = datos.get("kind", TIPO_TABLA)
    if tipo == TIPO_EMP:
        _exigir_campos(datos, ("unit", "layers"))
        unidad = _exigir_etiqueta(datos["unit"], "unit")
        P = emp_from_layers(capas_desde_lineas([f"+{unidad}", *_exigir_textos(datos["layers"], "layers")]))
        if "elements" in datos and sorted(_exigir_textos(datos["elements"], "elements")) != sorted(P.labels):
            raise FormatoInvalido("los elementos no coinciden con las capas", tuple(datos["elements"]))
        return P
    if tipo != TIPO_TABLA:
        raise FormatoInvalido(f"tipo de archivo desconocido: {tipo!r}", (str(tipo),))
    _exigir_campos(datos, ("elements", "unit", "covers", "mult"))
    etiquetas = _exigir_textos(datos["elements"], "elements")
    unidad = _exigir_etiqueta(datos["unit"], "unit")
    tabla = _exigir_tabla(datos["mult"], "mult")
    covers = _exigir_pares(datos["covers"], "covers")
    indice = {e: i for i, e in enumerate(etiquetas)}
    if unidad not in indice:
        raise FormatoInvalido(f"la unidad {unidad!r} no está entre los elementos", (unidad,))
    try:
        mult = [[indice[tabla[x][y]] for y in etiquetas] for x in etiquetas]
    except (KeyError, TypeError) as e:
        raise FormatoInvalido(f"tabla de producto incompleta o con etiquetas desconocidas: {e}") from e
    leq = orden_desde_coberturas(etiquetas, covers)
    return FinResLat.desde_tablas(etiquetas, leq, mult, indice[unidad])


def algebra_desde_dict(datos: dict) -> FinResLat | EMP:
    if not isinstance(datos, dict):
        raise FormatoInvalido("el archivo debe contener un objeto JSON")
    try:
        return _algebra_desde_dict(datos)
    except (TypeError, AttributeError, IndexError) as e:
        raise FormatoInvalido(f"archivo mal formado: {e}") from e


def desde_json(texto: str) -> FinResLat | EMP:
    try:
        datos = json.loads(texto)
    except json.JSONDecodeError as e:
        raise FormatoInvalido(f"JSON inválido: {e}") from e
    return algebra_desde_dict(datos)


# ============================================================
# Archivos
# ============================================================

def cargar(ruta: str | Path) -> FinResLat | EMP:
    """Álgebra o EMP desde un archivo (.emp o JSON) o una referencia lib:."""
    texto_ruta = str(ruta)
    if es_referencia(texto_ruta):
        return desde_referencia(texto_ruta)
    camino = Path(ruta)
    try:
        contenido = camino.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatoInvalido(f"no se pudo leer {camino}: {e.strerror}", (texto_ruta,)) from e
    LOGGER.debug("Leyendo %s", camino)
    if camino.suffix == EXTENSION_EMP:
        return emp_desde_texto(contenido)
    return desde_json(contenido)


def cargar_algebra(ruta: str | Path) -> FinResLat:
    """Como `cargar`, pero un EMP se convierte a su cadena."""
    objeto = cargar(ruta)
    return from_emp(objeto) if isinstance(objeto, EMP) else objeto


def guardar(objeto: FinResLat | EMP, ruta: str | Path, nombre: str = "") -> Path:
    camino = Path(ruta)
    if camino.suffix == EXTENSION_EMP:
        if not isinstance(objeto, EMP):
            raise ErrorReticulo("sólo un EMP se puede guardar en formato .emp", (str(camino),))
        texto = emp_a_texto(objeto)
    else:
        texto = a_json(objeto, nombre or camino.stem)
    camino.parent.mkdir(parents=True, exist_ok=True)
    camino.write_text(texto, encoding="utf-8")
    return camino
