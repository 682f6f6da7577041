import pandas as pd

from reticulos.biblioteca import sugihara
from reticulos.informes import exportar, tabla_conteos, tabla_propiedades
from reticulos.nucleo import direct_product


def test_count_table():
    df = tabla_conteos("chains", [3, 4])
    assert list(df["cantidad"]) == [2, 6]
    assert list(df.columns) == ["tipo", "n", "cantidad"]


def test_property_table_includes_subvarieties(sug5):
    df = tabla_propiedades(sug5, "sug5")
    valores = dict(zip(df["propiedad"], df["valor"]))
    assert valores["commutative"]
    assert valores["subvariedad SGSM"]
    assert set(df["algebra"]) == {"sug5"}


def test_property_table_of_non_conic_product():
    df = tabla_propiedades(direct_product(sugihara(3), sugihara(3)))
    assert not df["propiedad"].str.startswith("subvariedad").any()


def test_export_csv_and_xlsx(tmp_path):
    df = tabla_conteos("conic", [1, 2, 3])
    csv = exportar(df, tmp_path / "conteos.csv")
    assert pd.read_csv(csv)["cantidad"].tolist() == df["cantidad"].tolist()
    xlsx = exportar(df, tmp_path / "informes" / "conteos.xlsx", hoja="Conteos")
    leido = pd.read_excel(xlsx, sheet_name="Conteos")
    assert leido["n"].tolist() == [1, 2, 3]
