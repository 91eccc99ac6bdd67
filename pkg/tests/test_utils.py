import json
import logging

import numpy as np
import pytest
from loguru import logger

from vecconf.config import PathConfig, SamplingConfig
from vecconf.utils import TemplateUtils, dumps_json, intercept_std_logging, matrix_to_csv, parallel_map, write_text


def test_template_title_and_body(tmp_path):
    path = tmp_path / "report.md"
    path.write_text("Report for $name\nvalue: ${value}\n", encoding="utf-8")
    template = TemplateUtils(path)
    assert template.title == "Report for $name"
    assert template.render(value=3) == "Report for $name\nvalue: 3\n"


def test_packaged_templates_render():
    text = TemplateUtils(PathConfig.TEMPLATE_DIR / "gmatrix.md").render(
        n=5, r=3, source="a.json", target="b.json", via="algebraic", j_max=1, k_max=0, small="1\n2")
    assert text.startswith("# g-matrix\nConfigurations with n=5, r=3\n")
    assert "Route: algebraic" in text
    assert "g[j][k] = -g[r-j][k] = -g[j][n-r-k] = g[r-j][n-r-k]" in text
    with pytest.raises(KeyError):
        TemplateUtils(PathConfig.TEMPLATE_DIR / "faces.md").render(n=5)


def test_dumps_json_is_stable():
    assert dumps_json({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}'


def test_write_text_to_file_and_stdout(tmp_path, capsys):
    target = tmp_path / "out" / "f.json"
    write_text('{"x": 1}', target)
    assert json.loads(target.read_text(encoding="utf-8")) == {"x": 1}
    write_text("hello")
    assert capsys.readouterr().out == "hello\n"


def test_matrix_to_csv():
    assert matrix_to_csv(np.array([[1, 2], [3, 4]])) == "s,0,1\n0,1,2\n1,3,4\n"


def test_parallel_map_keeps_order():
    items = [-3, 1, -2, 5]
    assert parallel_map(abs, items, max_workers=1) == [3, 1, 2, 5]
    assert parallel_map(abs, items, max_workers=2) == [3, 1, 2, 5]


def test_seeded_rng_is_reproducible():
    a = SamplingConfig.rng(7).integers(0, 1000, size=5)
    b = SamplingConfig.rng(7).integers(0, 1000, size=5)
    assert np.array_equal(a, b)


def test_stdlib_loggers_are_forwarded_to_loguru():
    intercept_std_logging()
    messages = []
    sink = logger.add(messages.append, level="WARNING", format="{message}")
    try:
        logging.getLogger("pandas").warning("chained assignment")
    finally:
        logger.remove(sink)
    assert any("[pandas] chained assignment" in m for m in messages)
    assert not logging.getLogger("pandas").propagate
