"""
config.py — Configuración: variables de entorno, cotas por defecto y ejecución en paralelo
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Final, Iterable

LOGGER: Final = logging.getLogger(__name__)

ENV_HILOS = "IRCL_THREADS"
ENV_NIVEL_LOG = "IRCL_LOG_LEVEL"

# Cotas por defecto
COTA_BLOQUES = 12
CATALOGO_MAX = 8
PROFUNDIDAD_ESQUEMA = 2
COTA_FALLAS_CADENAS = 12
COTA_FALLAS_CONICAS = 14
TAMANO_MAX_ORACULO = 5

FORMATO_LOG = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def hilos() -> int:
    """Número de procesos de trabajo según IRCL_THREADS (1 si falta o es inválido)."""
    valor = os.environ.get(ENV_HILOS)
    if valor is None or valor.strip() == "":
        return 1
    try:
        n = int(valor)
    except ValueError:
        LOGGER.warning("%s=%r no es un entero; se usa 1", ENV_HILOS, valor)
        return 1
    if n < 1:
        LOGGER.warning("%s=%d debe ser positivo; se usa 1", ENV_HILOS, n)
        return 1
    return n


def nivel_log(verbose: int = 0) -> int:
    """Nivel de logging: -v → INFO, -vv → DEBUG; si no, IRCL_LOG_LEVEL o WARNING."""
    if verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    nombre = os.environ.get(ENV_NIVEL_LOG, "WARNING").upper()
    nivel = logging.getLevelName(nombre)
    return nivel if isinstance(nivel, int) else logging.WARNING


def configurar_logging(verbose: int = 0) -> None:
    logging.basicConfig(level=nivel_log(verbose), format=FORMATO_LOG)


def mapear_en_paralelo(funcion: Callable, tareas: Iterable) -> list:
    """
    Aplica `funcion` a cada tarea. Con un solo proceso corre en secuencia;
    con varios usa un ProcessPoolExecutor. El resultado conserva el orden de las tareas.
    """
    tareas = list(tareas)
    n = hilos()
    if n == 1 or len(tareas) <= 1:
        return [funcion(t) for t in tareas]
    LOGGER.info("Repartiendo %d tareas en %d procesos", len(tareas), n)
    with ProcessPoolExecutor(max_workers=n) as ejecutor:
        return list(ejecutor.map(funcion, tareas))
