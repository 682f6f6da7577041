"""
Fixtures y estrategias compartidas por la suite.
"""

import pytest
from hypothesis import strategies as st

from reticulos.biblioteca import godel, sugihara, sugihara3_brouwer
from reticulos.enumeracion import layer_sequences
from reticulos.nucleo import renombrar


def codigos_de_cadenas(max_n: int = 6) -> st.SearchStrategy[str]:
    """Códigos de capas de cadenas con 1..max_n elementos."""
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.sampled_from(list(layer_sequences(n)))
    )


@pytest.fixture
def sug3():
    return sugihara(3)


@pytest.fixture
def sug5():
    return sugihara(5)


@pytest.fixture
def brouwer3():
    return sugihara3_brouwer()


@pytest.fixture
def godel2_c():
    """Cadena {c < 1}."""
    return renombrar(godel(2), {"b1": "c"})
