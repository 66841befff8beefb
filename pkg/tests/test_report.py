import json

from conftest import make_semirings
from utvar.analysis import enumerate_free
from utvar.report import (
    rank1_growth_series,
    render_cayley_figure,
    render_growth_figure,
    write_cayley_csv,
    write_cayley_json,
    write_json,
)

SEMIRINGS = make_semirings()


def test_rank1_growth_series_saturates_for_boolean():
    series = rank1_growth_series(SEMIRINGS["boolean"], 2, 6)
    assert series == [1, 2, 3, 3, 3, 3, 3]


def test_rank1_growth_series_free_for_tropical():
    series = rank1_growth_series(SEMIRINGS["tropical"], 2, 5)
    assert series == [1, 2, 3, 4, 5, 6]


def test_writers_and_figures(tmp_path):
    table = enumerate_free(2, SEMIRINGS["zmod:2"], 1, mode="monoid")
    csv_path = write_cayley_csv(table, str(tmp_path / "t.csv"))
    rows = open(csv_path).read().splitlines()
    assert rows[0] == "index,word,gen:a"
    assert len(rows) == table.size + 1
    json_path = write_cayley_json(table, str(tmp_path / "t.json"))
    data = json.loads(open(json_path).read())
    assert data["size"] == table.size == 4
    fig_path = render_cayley_figure(table, str(tmp_path / "t.png"))
    assert open(fig_path, "rb").read(8).startswith(b"\x89PNG")
    growth_path = render_growth_figure(
        SEMIRINGS["boolean"], 2, 5, str(tmp_path / "g.png"))
    assert open(growth_path, "rb").read(8).startswith(b"\x89PNG")
    report_path = write_json({"verdict": "locally finite"},
                             str(tmp_path / "r.json"))
    assert json.loads(open(report_path).read())["verdict"] == "locally finite"
