import pytest

from src.errors import MalformedInput, NotATree
from src.extractor import TreeReader, read_corpus, read_tree_file

from conftest import CORPUS_DIR


def test_read_tree_file(tmp_path):
    path = tmp_path / "p3.txt"
    path.write_text("# path\n1 2\n2 3\n")
    tree = read_tree_file(path)
    assert tree.k == 3
    assert tree.edges == ((1, 2), (2, 3))


def test_tree_info(tmp_path):
    path = tmp_path / "s4.txt"
    path.write_text("1 2\n1 3\n1 4\n")
    reader = TreeReader(path)
    assert reader.get_tree_info()["k"] == 0
    reader.read()
    info = reader.get_tree_info()
    assert info["k"] == 4
    assert info["edges"] == [[1, 2], [1, 3], [1, 4]]
    assert info["diameter"] == 2
    assert info["wiener"] == 9


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_tree_file(tmp_path / "nope.txt")


def test_directory_is_not_a_tree_file(tmp_path):
    with pytest.raises(MalformedInput):
        read_tree_file(tmp_path)


def test_binary_file(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"\xff\xfe\x00\x01")
    with pytest.raises(MalformedInput):
        read_tree_file(path)


def test_cycle_is_rejected(tmp_path):
    path = tmp_path / "cycle.txt"
    path.write_text("1 2\n2 3\n3 1\n")
    with pytest.raises(NotATree):
        read_tree_file(path)


def test_read_corpus_sorted(tmp_path):
    (tmp_path / "b.txt").write_text("1 2\n")
    (tmp_path / "a.txt").write_text("1 2\n2 3\n")
    (tmp_path / "notes.md").write_text("ignored")
    corpus = read_corpus(tmp_path)
    assert [name for name, _ in corpus] == ["a", "b"]
    assert [tree.k for _, tree in corpus] == [3, 2]


def test_read_corpus_missing_directory(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_corpus(tmp_path / "missing")


def test_shipped_corpus():
    corpus = dict(read_corpus(CORPUS_DIR))
    assert set(corpus) == {"p2", "p3", "p4", "p5", "s4", "s5", "spider_221"}
    assert corpus["spider_221"].k == 6
    assert corpus["s5"].edges == ((1, 2), (1, 3), (1, 4), (1, 5))
