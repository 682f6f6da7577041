import logging

from reticulos.config import ENV_HILOS, ENV_NIVEL_LOG, hilos, mapear_en_paralelo, nivel_log


def _cuadrado(x: int) -> int:
    return x * x


def test_threads_default(monkeypatch):
    monkeypatch.delenv(ENV_HILOS, raising=False)
    assert hilos() == 1


def test_threads_from_env(monkeypatch):
    monkeypatch.setenv(ENV_HILOS, "3")
    assert hilos() == 3


def test_invalid_threads_warn(monkeypatch, caplog):
    monkeypatch.setenv(ENV_HILOS, "muchos")
    with caplog.at_level(logging.WARNING):
        assert hilos() == 1
    assert ENV_HILOS in caplog.text
    monkeypatch.setenv(ENV_HILOS, "0")
    assert hilos() == 1


def test_log_level(monkeypatch):
    monkeypatch.delenv(ENV_NIVEL_LOG, raising=False)
    assert nivel_log() == logging.WARNING
    assert nivel_log(1) == logging.INFO
    assert nivel_log(2) == logging.DEBUG
    monkeypatch.setenv(ENV_NIVEL_LOG, "debug")
    assert nivel_log() == logging.DEBUG
    monkeypatch.setenv(ENV_NIVEL_LOG, "ruidoso")
    assert nivel_log() == logging.WARNING


def test_parallel_map_keeps_order(monkeypatch):
    monkeypatch.setenv(ENV_HILOS, "1")
    assert mapear_en_paralelo(_cuadrado, range(6)) == [0, 1, 4, 9, 16, 25]
    monkeypatch.setenv(ENV_HILOS, "2")
    assert mapear_en_paralelo(_cuadrado, range(6)) == [0, 1, 4, 9, 16, 25]
