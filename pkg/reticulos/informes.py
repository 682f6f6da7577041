"""
informes.py — Tablas de propiedades y de conteos para exportar
==============================================================
Las tablas son DataFrames de pandas; se guardan como CSV o, con extensión
.xlsx, como Excel (openpyxl).
"""

import logging
from pathlib import Path
from typing import Final, Iterable

import pandas as pd

from reticulos.descomposicion import subvariety_profile
from reticulos.enumeracion import enumerar
from reticulos.nucleo import FinResLat, property_flags

LOGGER: Final = logging.getLogger(__name__)


def tabla_propiedades(A: FinResLat, nombre: str = "") -> pd.DataFrame:
    """
    Una fila por predicado: columnas 'algebra', 'propiedad', 'valor'.
    Para álgebras cónicas idempotentes se agregan las subvariedades.
    """
    filas = [
        {"algebra": nombre, "propiedad": clave, "valor": valor}
        for clave, valor in property_flags(A).como_dict().items()
    ]
    if A.es_idempotente and A.es_conica:
        filas += [
            {"algebra": nombre, "propiedad": f"subvariedad {clave}", "valor": valor}
            for clave, valor in subvariety_profile(A).items()
        ]
    return pd.DataFrame(filas, columns=["algebra", "propiedad", "valor"])


def tabla_conteos(tipo: str, tamanos: Iterable[int]) -> pd.DataFrame:
    """Cantidad de álgebras enumeradas por tamaño."""
    filas = []
    for n in tamanos:
        cantidad = sum(1 for _ in enumerar(tipo, n))
        LOGGER.debug("Conteo %s n=%d: %d", tipo, n, cantidad)
        filas.append({"tipo": tipo, "n": n, "cantidad": cantidad})
    return pd.DataFrame(filas, columns=["tipo", "n", "cantidad"])


def exportar(df: pd.DataFrame, ruta: str | Path, hoja: str = "Informe") -> Path:
    camino = Path(ruta)
    camino.parent.mkdir(parents=True, exist_ok=True)
    if camino.suffix.lower() == ".xlsx":
        with pd.ExcelWriter(camino, engine="openpyxl") as writer:
            df.to_excel(writer, index=False, sheet_name=hoja)
    else:
        df.to_csv(camino, index=False)
    LOGGER.info("Informe guardado en %s (%d filas)", camino, len(df))
    return camino
