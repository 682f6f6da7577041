"""
CLI del banco de trabajo de retículos residuados idempotentes
=============================================================
Ejecutar con:
    python cli.py --help
    python cli.py verify lib:sugihara:5

Códigos de salida: 0 éxito; 1 falla de verificación o de propiedad;
2 cota excedida o amalgama no encontrada; 3 error de entrada.
"""

import sys
from pathlib import Path
from typing import Sequence

import click

from reticulos.amalgamas import (
    VFormation,
    amalgamate_rigid_conjunctive_conic,
    amalgamate_star_inv_chains,
    reduce_vformation,
    testigo_no_conjuntivo,
    testigo_no_rigido,
)
from reticulos.biblioteca import ENTRADAS, FORMACIONES, library
from reticulos.busqueda import CLASES_BUSQUEDA, search_amalgam_detallado
from reticulos.cadenas import EMP, crown_decomposition, from_emp, to_emp, verify_emp
from reticulos.config import COTA_BLOQUES, configurar_logging
from reticulos.descomposicion import extract_system
from reticulos.diagramas import VISTAS, render
from reticulos.enumeracion import TIPOS_ENUMERACION, enumerar
from reticulos.errores import (
    BoundExceeded,
    ErrorReticulo,
    FormatoInvalido,
    InconsistenciaInterna,
    UnknownFigure,
    UnknownName,
)
from reticulos.fallas import FIGURAS, check_failure_argument
from reticulos.formatos import a_json, cargar, cargar_algebra, guardar
from reticulos.informes import exportar, tabla_conteos, tabla_propiedades
from reticulos.nucleo import FinResLat, block_kind, is_star_involutive, verify_nucleus

SALIDA_OK = 0
SALIDA_FALLA = 1
SALIDA_COTA = 2
SALIDA_ENTRADA = 3

CLASE_CADENAS_STAR = "chains-star-inv"
CLASE_CONICAS_RIGIDAS = "rigid-conjunctive-conic"


# ============================================================
# Helpers
# ============================================================

def _error(mensaje: str) -> None:
    click.secho(mensaje, fg="red", err=True)


def _codigo_de(error: Exception) -> int:
    if isinstance(error, (FormatoInvalido, UnknownName, UnknownFigure)):
        return SALIDA_ENTRADA
    if isinstance(error, BoundExceeded):
        return SALIDA_COTA
    return SALIDA_FALLA


def _diagnostico(error: ErrorReticulo) -> str:
    texto = f"{type(error).__name__}: {error}"
    if error.testigo:
        texto += f" [testigo: {', '.join(map(str, error.testigo))}]"
    if isinstance(error, BoundExceeded):
        texto += f" [cota: {error.cota}]"
    return texto


class GrupoReticulos(click.Group):
    """Convierte los errores del dominio en códigos de salida y diagnósticos en stderr."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.show()
            ctx.exit(SALIDA_ENTRADA)
        except ErrorReticulo as e:
            _error(_diagnostico(e))
            ctx.exit(_codigo_de(e))
        except InconsistenciaInterna as e:
            _error(f"inconsistencia interna: {e}")
            ctx.exit(SALIDA_FALLA)


def _formacion(a: str, b: str, c: str) -> VFormation:
    return reduce_vformation(VFormation.from_inclusions(cargar_algebra(a), cargar_algebra(b), cargar_algebra(c)))


def _echo_algebra(A: FinResLat) -> None:
    click.echo(f"elementos ({A.n}): {' < '.join(A.labels[x] for x in A.orden_lineal) if A.es_cadena else ', '.join(A.labels)}")


# ============================================================
# Comandos
# ============================================================

@click.group(cls=GrupoReticulos)
@click.option("-v", "--verbose", count=True, help="-v INFO, -vv DEBUG (por defecto IRCL_LOG_LEVEL o WARNING).")
def cli(verbose: int) -> None:
    """Banco de trabajo para retículos residuados idempotentes finitos."""
    configurar_logging(verbose)


@cli.command()
@click.argument("archivo")
def verify(archivo: str) -> None:
    """Valida un álgebra (tablas) o un EMP (capas)."""
    objeto = cargar(archivo)
    if isinstance(objeto, EMP):
        informe = verify_emp(objeto)
    elif objeto.es_idempotente and objeto.es_conica:
        informe = verify_nucleus(objeto)
    else:
        informe = None
    if informe is not None and not informe:
        for fallo in informe.fallos:
            _error(f"{fallo.condicion}: {', '.join(fallo.testigo)} {fallo.detalle}".rstrip())
        click.get_current_context().exit(SALIDA_FALLA)
    n = objeto.n
    click.echo(f"OK: {archivo} ({n} elementos)")


@cli.command()
@click.argument("archivo")
@click.option("--report", "reporte", type=click.Path(dir_okay=False), help="Guardar la tabla (.csv o .xlsx).")
def props(archivo: str, reporte: str | None) -> None:
    """Todos los predicados, con testigos cuando fallan."""
    A = cargar_algebra(archivo)
    df = tabla_propiedades(A, archivo)
    for fila in df.itertuples(index=False):
        click.echo(f"{fila.propiedad}: {fila.valor}")
    if A.es_idempotente and A.es_conica:
        if not df.loc[df["propiedad"] == "rigid", "valor"].item():
            click.echo(f"  testigo no rígido: {', '.join(testigo_no_rigido(A))}")
        if not df.loc[df["propiedad"] == "conjunctive", "valor"].item():
            click.echo(f"  testigo no conjuntivo: {', '.join(testigo_no_conjuntivo(A))}")
    if reporte:
        exportar(df, reporte, hoja="Propiedades")


@cli.command()
@click.argument("archivo")
@click.option("--to", "destino", required=True, type=click.Path(dir_okay=False))
def emp(archivo: str, destino: str) -> None:
    """Convierte entre tablas y EMP (en la dirección que corresponda)."""
    objeto = cargar(archivo)
    convertido = from_emp(objeto) if isinstance(objeto, EMP) else to_emp(objeto)
    if isinstance(convertido, FinResLat) and destino.endswith(".emp"):
        raise FormatoInvalido("un álgebra en tablas se guarda como JSON, no como .emp", (destino,))
    guardar(convertido, destino)
    click.echo(f"Guardado en {destino}")


@cli.command()
@click.argument("archivo")
def decompose(archivo: str) -> None:
    """Sistema de descomposición (y coronas, si es una cadena ⋆-involutiva)."""
    A = cargar_algebra(archivo)
    D = extract_system(A)
    S = D.skeleton
    click.echo(f"esqueleto: {' < '.join(S.labels[s] for s in S.orden_lineal)}")
    for s in S.orden_lineal:
        etiqueta = S.labels[s]
        bloque = D.blocks[s]
        cubierta = D.lower_cover[s]
        extra = f", cubierta inferior {S.labels[cubierta]}" if cubierta is not None else ""
        click.echo(f"  {etiqueta}: {{{', '.join(bloque.labels)}}} ({block_kind(A, A.indice(etiqueta))}{extra})")
    if A.es_cadena and is_star_involutive(A) and A.n > 1:
        _, coronas = crown_decomposition(A)
        click.echo("coronas: " + " | ".join(" ".join(C.labels) for C in coronas))


@cli.command()
@click.argument("a")
@click.argument("b")
@click.argument("c")
@click.option("--class", "clase", required=True, type=click.Choice([CLASE_CADENAS_STAR, CLASE_CONICAS_RIGIDAS]))
@click.option("--block-bound", default=COTA_BLOQUES, show_default=True, type=click.IntRange(min=1))
@click.option("--distributive", is_flag=True, help="Bloques positivos distributivos.")
@click.option("-o", "salida", type=click.Path(dir_okay=False), help="Archivo para D.")
def amalgamate(a: str, b: str, c: str, clase: str, block_bound: int, distributive: bool, salida: str | None) -> None:
    """Amalgama certificada de B y C sobre A (fuerte salvo, quizá, con --distributive)."""
    V = _formacion(a, b, c)
    if clase == CLASE_CADENAS_STAR:
        cert = amalgamate_star_inv_chains(V)
    else:
        cert = amalgamate_rigid_conjunctive_conic(V, block_bound, distributive)
    click.echo(f"amalgama {'fuerte' if cert.strong else 'no fuerte'}: |D| = {cert.D.n}")
    _echo_algebra(cert.D)
    if salida:
        guardar(cert.D, salida)


@cli.command("search-amalgam")
@click.argument("a")
@click.argument("b")
@click.argument("c")
@click.option("--class", "clase", required=True, type=click.Choice(CLASES_BUSQUEDA))
@click.option("--max-size", required=True, type=click.IntRange(min=1))
@click.option("--one-sided", is_flag=True, help="Buscar 1-amalgamas (g_B sólo homomorfismo).")
@click.option("-o", "salida", type=click.Path(dir_okay=False))
def search_amalgam(a: str, b: str, c: str, clase: str, max_size: int, one_sided: bool, salida: str | None) -> None:
    """Búsqueda exhaustiva acotada."""
    V = _formacion(a, b, c)
    resultado = search_amalgam_detallado(V, clase, max_size, one_sided)
    if not resultado.completa:
        _error("aviso: algún bloque superó el catálogo; la búsqueda no es exhaustiva")
    if resultado.certificado is None:
        tipo = "1-amalgam" if one_sided else "amalgam"
        click.echo(f"no {tipo} up to {max_size}")
        for razon, cantidad in sorted(resultado.eliminados.items()):
            click.echo(f"  {razon}: {cantidad}")
        click.get_current_context().exit(SALIDA_COTA)
    cert = resultado.certificado
    click.echo(f"amalgama encontrada: |D| = {cert.D.n} ({'fuerte' if cert.strong else 'no fuerte'})")
    _echo_algebra(cert.D)
    if salida:
        guardar(cert.D, salida)


@cli.command("enumerate")
@click.option("--kind", "tipo", required=True, type=click.Choice(TIPOS_ENUMERACION))
@click.option("--size", "n", required=True, type=click.IntRange(min=1))
@click.option("--count", "contar", is_flag=True)
@click.option("--emit", "directorio", type=click.Path(file_okay=False))
@click.option("--report", "reporte", type=click.Path(dir_okay=False))
def enumerate_(tipo: str, n: int, contar: bool, directorio: str | None, reporte: str | None) -> None:
    """Enumera las álgebras de un tamaño, salvo isomorfismo."""
    if contar == (directorio is not None):
        raise click.UsageError("usar exactamente una de --count o --emit")
    if contar:
        df = tabla_conteos(tipo, [n])
        click.echo(str(df["cantidad"].iloc[0]))
        if reporte:
            exportar(df, reporte, hoja="Conteos")
        return
    destino = Path(directorio)
    total = 0
    for i, A in enumerate(enumerar(tipo, n)):
        guardar(A, destino / f"{tipo}_{n}_{i:04d}.json")
        total += 1
    click.echo(f"{total} álgebras en {destino}")
    if reporte:
        exportar(tabla_conteos(tipo, [n]), reporte, hoja="Conteos")


@cli.command("render")
@click.argument("archivo")
@click.option("--view", "vista", required=True, type=click.Choice(VISTAS))
@click.option("-o", "salida", type=click.Path(dir_okay=False))
def render_(archivo: str, vista: str, salida: str | None) -> None:
    """Diagrama DOT."""
    texto = render(cargar(archivo), vista, Path(archivo).stem if ":" not in archivo else archivo)
    if salida:
        Path(salida).write_text(texto, encoding="utf-8")
    else:
        click.echo(texto, nl=False)


@cli.group("library")
def library_() -> None:
    """Álgebras con nombre."""


@library_.command("list")
def library_list() -> None:
    for entrada in ENTRADAS.values():
        parametros = f" {entrada.parametros}" if entrada.parametros else ""
        click.echo(f"{entrada.nombre}{parametros}: {entrada.descripcion}")
    for nombre, partes in FORMACIONES.items():
        click.echo(f"{nombre} (formación en V): {', '.join(partes)}")


@library_.command("show")
@click.argument("nombre")
@click.argument("parametros", nargs=-1, type=int)
def library_show(nombre: str, parametros: tuple[int, ...]) -> None:
    A = library(nombre, parametros)
    click.echo(a_json(A, nombre), nl=False)


@cli.command()
@click.argument("figura", type=click.Choice(list(FIGURAS)))
@click.option("--max-size", type=click.IntRange(min=1), default=None, help="Cota de la búsqueda (por defecto, según la figura).")
def failure(figura: str, max_size: int | None) -> None:
    """Repite el argumento de falla de una figura."""
    informe = check_failure_argument(figura, max_size)
    for paso in informe.datos["pasos"]:
        marca = "ok" if paso.ok else "FALLA"
        click.echo(f"[{marca}] {paso.nombre}: {paso.descripcion}")
    click.echo(f"contradicción: {informe.datos['contradiccion']}")
    for clase, eliminados in informe.datos["eliminaciones"].items():
        resumen = ", ".join(f"{k}={v}" for k, v in sorted(eliminados.items()))
        click.echo(f"búsqueda {clase} hasta {informe.datos['cota']}: sin amalgama ({resumen})")
    if not informe:
        for fallo in informe.fallos:
            _error(f"{fallo.condicion}: {fallo.detalle}")
        click.get_current_context().exit(SALIDA_FALLA)


# ============================================================
# Entrada
# ============================================================

def cli_main(argv: Sequence[str] | None = None) -> int:
    """Ejecuta la CLI y devuelve el código de salida."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        resultado = cli.main(args=args, prog_name="reticulos", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return SALIDA_ENTRADA
    except click.Abort:
        return SALIDA_FALLA
    return resultado if isinstance(resultado, int) else SALIDA_OK


if __name__ == "__main__":
    sys.exit(cli_main())
