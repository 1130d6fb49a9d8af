import pytest

from fbeta_plot.core.curves import ClassifierRecord, make_beta_grid
from fbeta_plot.core.metrics import PointEstimate


@pytest.fixture
def make_record():
    """make_record("A", (ppv, tpr), (ppv, tpr), ...) -> ClassifierRecord"""

    def _make(name, *folds):
        return ClassifierRecord(name=name, folds=tuple(PointEstimate(ppv=p, tpr=t) for p, t in folds))

    return _make


@pytest.fixture
def default_grid():
    return make_beta_grid(0.01, 100.0, 1001)


@pytest.fixture
def symmetric_pool(make_record):
    return [make_record("A", (0.9, 0.6)), make_record("B", (0.6, 0.9))]


@pytest.fixture
def write_file(tmp_path):
    """把文本写到 tmp_path 下并返回路径字符串"""

    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8", newline="")
        return str(path)

    return _write
