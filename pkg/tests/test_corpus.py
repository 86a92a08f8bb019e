import json
import shutil

import pytest

from girthlab.corpus import (
    DEFAULT_DIR,
    constructions,
    corpus_checksum,
    load_corpus,
    load_entry,
    write_corpus,
)
from girthlab.errors import CorpusMissing, ValidationError

REQUIRED = ["V4", "S3", "S4", "A4", "Q8", "C2xC4"] + [f"C{n}" for n in range(2, 25)] + [f"D{n}" for n in range(3, 13)]


def test_required_groups_present():
    names = {e.name for e in load_corpus()}
    assert set(REQUIRED) <= names
    assert all(e.order <= 24 for e in load_corpus())


def test_orders_and_generation():
    expect = {"S4": 24, "A4": 12, "Q8": 8, "SL23": 24, "D12": 24, "Dic3": 12, "C2xQ8": 16}
    for name, n in expect.items():
        e = load_entry(name)
        assert e.order == n
        assert e.table.generates(list(e.gens))


def test_bundled_files_match_generator(tmp_path):
    write_corpus(tmp_path)
    assert (tmp_path / "manifest.json").read_text() == (DEFAULT_DIR / "manifest.json").read_text()
    assert len(constructions()) == len(json.loads((tmp_path / "manifest.json").read_text())["groups"])


def test_env_override(tmp_path, monkeypatch):
    shutil.copytree(DEFAULT_DIR, tmp_path / "c")
    monkeypatch.setenv("GIRTHLAB_CORPUS", str(tmp_path / "c"))
    assert corpus_checksum() == corpus_checksum(DEFAULT_DIR)
    with open(tmp_path / "c" / "C3.cayley", "a") as f:
        f.write("0\n")
    with pytest.raises(ValidationError):
        load_entry("C3")
    monkeypatch.setenv("GIRTHLAB_CORPUS", str(tmp_path / "nowhere"))
    with pytest.raises(CorpusMissing):
        load_corpus()


def test_unknown_entry():
    with pytest.raises(ValidationError):
        load_entry("M11")
