import math

import numpy as np
import pytest

from crowdist.errors import CsvParseError
from crowdist.io import (format_population_csv, json_ready, read_population_csv,
                         write_population_csv)
from crowdist.population import Population


def sample_population():
    return Population(
        decisions=np.array([[0.1], [0.25], [1 / 3]]),
        objectives=np.array([[0.1, 0.9], [0.25, 0.75], [1 / 3, 2 / 3]]),
        ranks=np.array([0, 0, 0]),
        crowding=np.array([math.inf, 1.3, math.inf]),
    )


def test_round_trip_is_lossless(tmp_path):
    pop = sample_population()
    path = tmp_path / "pop.csv"
    write_population_csv(path, pop, {"problem": "linefront", "seed": 3})
    loaded, manifest = read_population_csv(path)
    assert manifest == {"problem": "linefront", "seed": "3"}
    assert np.array_equal(loaded.decisions, pop.decisions)
    assert np.array_equal(loaded.objectives, pop.objectives)
    assert np.array_equal(loaded.ranks, pop.ranks)
    assert np.array_equal(loaded.crowding, pop.crowding)


def test_infinite_crowding_token():
    text = format_population_csv(sample_population())
    assert ",inf" in text
    assert "Infinity" not in text


def test_rewrite_is_byte_identical(tmp_path):
    pop = sample_population()
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_population_csv(a, pop, {"seed": 0})
    write_population_csv(b, pop, {"seed": 0})
    assert a.read_bytes() == b.read_bytes()


def test_parse_error_names_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("id,x1,f1,f2,rank,crowding\n0,0.1,0.1,0.9,0,inf\n1,oops,0.2,0.8,0,1.0\n")
    with pytest.raises(CsvParseError, match="line 3"):
        read_population_csv(path)


def test_header_validation(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("x1,f1,f2\n0.1,0.1,0.9\n")
    with pytest.raises(CsvParseError, match="header"):
        read_population_csv(path)


def test_missing_rows(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("id,x1,f1,f2,rank,crowding\n")
    with pytest.raises(CsvParseError, match="no population rows"):
        read_population_csv(path)


def test_json_ready_tokens():
    payload = {"a": math.inf, "b": [1, np.float64(2.5)], "c": np.array([3, 4])}
    ready = json_ready(payload)
    assert ready == {"a": "inf", "b": [1, 2.5], "c": [3, 4]}
    with pytest.raises(ValueError, match="NaN"):
        json_ready({"x": math.nan})
