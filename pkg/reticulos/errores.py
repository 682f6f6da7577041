"""
errores.py — Excepciones e informes de verificación
"""

from dataclasses import dataclass, field


class ErrorReticulo(ValueError):
    """Error base del paquete. `testigo` guarda las etiquetas que muestran la falla."""

    def __init__(self, mensaje: str, testigo: tuple | None = None):
        super().__init__(mensaje)
        self.testigo = testigo


# ── Axiomas del núcleo ──────────────────────────────────────

class NotALattice(ErrorReticulo):
    pass


class NotResiduated(ErrorReticulo):
    pass


class NotAssociative(ErrorReticulo):
    pass


class UnitFailure(ErrorReticulo):
    pass


class NotConic(ErrorReticulo):
    pass


class NucleusViolation(ErrorReticulo):
    pass


# ── Cadenas y preórdenes ────────────────────────────────────

class NotAChain(ErrorReticulo):
    pass


class InvalidIGC(ErrorReticulo):
    pass


class InvalidEMP(ErrorReticulo):
    """Falla de una condición de preorden monoidal enriquecido; `condicion` la identifica."""

    def __init__(self, mensaje: str, condicion: str, testigo: tuple | None = None):
        super().__init__(mensaje, testigo)
        self.condicion = condicion


class NotConfigured(ErrorReticulo):
    pass


class NotStarInvolutive(ErrorReticulo):
    pass


class SideConditionViolated(ErrorReticulo):
    """Un sumando no superior de una suma anidada tiene inversos o supremos iguales a 1."""

    def __init__(self, mensaje: str, indice: int, testigo: tuple | None = None):
        super().__init__(mensaje, testigo)
        self.indice = indice


# ── Descomposición y congruencias ──────────────────────────

class InvalidSystem(ErrorReticulo):
    pass


class NotCommutative(ErrorReticulo):
    pass


class NotSemiconicIdempotent(ErrorReticulo):
    pass


class CepFailure(ErrorReticulo):
    pass


# ── Amalgamas ──────────────────────────────────────────────

class NotRigid(ErrorReticulo):
    pass


class NotConjunctive(ErrorReticulo):
    pass


class NotReduced(ErrorReticulo):
    pass


class BoundExceeded(ErrorReticulo):
    def __init__(self, mensaje: str, cota: int, testigo: tuple | None = None):
        super().__init__(mensaje, testigo)
        self.cota = cota


class BlockAmalgamBoundExceeded(BoundExceeded):
    pass


class UnknownFigure(ErrorReticulo):
    pass


# ── Biblioteca y archivos ──────────────────────────────────

class UnknownName(ErrorReticulo):
    pass


class FormatoInvalido(ErrorReticulo):
    pass


class InconsistenciaInterna(RuntimeError):
    """Dos cálculos independientes no coinciden. Nunca es culpa de la entrada."""


# ============================================================
# Informes
# ============================================================

@dataclass
class Fallo:
    condicion: str
    testigo: tuple
    detalle: str = ""


@dataclass
class Informe:
    """
    Resultado de una verificación: lista de fallos (vacía si todo se cumple)
    y datos adicionales calculados en el camino.
    """
    nombre: str
    fallos: list[Fallo] = field(default_factory=list)
    datos: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.fallos

    def __bool__(self) -> bool:
        return self.ok

    def agregar(self, condicion: str, testigo: tuple, detalle: str = "") -> None:
        self.fallos.append(Fallo(condicion, tuple(testigo), detalle))

    def condiciones_fallidas(self) -> list[str]:
        vistas = []
        for fallo in self.fallos:
            if fallo.condicion not in vistas:
                vistas.append(fallo.condicion)
        return vistas

    def exigir(self, clase_error: type = ErrorReticulo) -> None:
        """Lanza `clase_error` con el primer testigo si hubo algún fallo."""
        if self.ok:
            return
        primero = self.fallos[0]
        mensaje = f"{self.nombre}: falla la condición {primero.condicion}"
        if primero.detalle:
            mensaje += f" ({primero.detalle})"
        if issubclass(clase_error, InvalidEMP):
            raise clase_error(mensaje, primero.condicion, primero.testigo)
        raise clase_error(mensaje, primero.testigo)
