from __future__ import annotations

from pathlib import Path

import pytest

from ncwl import CorpusError, brute_force_isomorphic, compare, load_corpus

REQUIRED_ENTRIES = {
    "fig1a-hexagon-vs-two-triangles",
    "fig1a-prism-vs-k33",
    "fig1a-labeled-ring-vs-triangles",
    "fig1b-execution-pair",
    "fig3-pair",
    "c6-vs-2c3",
    "c8-vs-2c4",
    "k3-vs-k3-perm",
    "p4-vs-k13",
}


def test_required_entries_present():
    names = {e.name for e in load_corpus()}
    assert REQUIRED_ENTRIES <= names


def test_every_verdict_reproduced_by_the_engine():
    for entry in load_corpus():
        g1, g2 = entry.graphs()
        for method, expected in entry.verdicts.items():
            assert compare(g1, g2, method).verdict == expected, (entry.name, method)


def test_oracle_isomorphism_field_verified():
    for entry in load_corpus():
        g1, g2 = entry.graphs()
        if entry.oracle_isomorphic is None or max(g1.node_count, g2.node_count) > 10:
            continue
        assert brute_force_isomorphic(g1, g2) == entry.oracle_isomorphic, entry.name


def test_specific_expectations():
    by_name = {e.name: e for e in load_corpus()}
    c6_pair = by_name["c6-vs-2c3"]
    assert c6_pair.verdicts["1wl"] == "not-distinguished"
    assert c6_pair.verdicts["nc1wl"] == "distinguished"
    assert c6_pair.verdicts["3wl"] == "distinguished"
    perm_pair = by_name["k3-vs-k3-perm"]
    assert perm_pair.oracle_isomorphic is True
    assert set(perm_pair.verdicts.values()) == {"not-distinguished"}
    fig3 = by_name["fig3-pair"]
    assert fig3.verdicts["nc1wl"] == "not-distinguished"
    assert fig3.verdicts["3wl"] == "distinguished"
    assert fig3.provenance == "paper"


def test_strictness_witnesses_exist():
    entries = load_corpus()
    assert any(
        e.verdicts["1wl"] == "not-distinguished" and e.verdicts["nc1wl"] == "distinguished"
        for e in entries
    )
    assert any(
        e.verdicts["nc1wl"] == "not-distinguished" and e.verdicts["3wl"] == "distinguished"
        for e in entries
    )


def _write_corpus(tmp_path: Path, manifest: str) -> Path:
    (tmp_path / "a.txt").write_text("2 1\n0 1\n")
    (tmp_path / "b.txt").write_text("2 0\n")
    (tmp_path / "manifest.txt").write_text(manifest)
    return tmp_path


def test_corrupt_manifest_field_count(tmp_path):
    root = _write_corpus(tmp_path, "x | a.txt | b.txt | 1wl=d\n")
    with pytest.raises(CorpusError, match="expected 9 fields"):
        load_corpus(root)


def test_corrupt_manifest_bad_verdict(tmp_path):
    root = _write_corpus(
        tmp_path, "x | a.txt | b.txt | 1wl=q | nc1wl=d | 2wl=d | 3wl=d | iso=f | prov=derived\n"
    )
    with pytest.raises(CorpusError, match="bad verdict"):
        load_corpus(root)

def test_manifest_rejects_hierarchy_violation(tmp_path):
    root = _write_corpus(
        tmp_path, "x | a.txt | b.txt | 1wl=d | nc1wl=n | 2wl=d | 3wl=d | iso=f | prov=derived\n"
    )
    with pytest.raises(CorpusError, match="1wl distinguished but nc1wl not"):
        load_corpus(root)


def test_manifest_rejects_two_wl_mismatch(tmp_path):
    root = _write_corpus(
        tmp_path, "x | a.txt | b.txt | 1wl=d | nc1wl=d | 2wl=n | 3wl=d | iso=f | prov=derived\n"
    )
    with pytest.raises(CorpusError, match="2wl verdict"):
        load_corpus(root)


def test_manifest_rejects_distinguished_isomorphic(tmp_path):
    root = _write_corpus(
        tmp_path, "x | a.txt | b.txt | 1wl=d | nc1wl=d | 2wl=d | 3wl=d | iso=t | prov=derived\n"
    )
    with pytest.raises(CorpusError, match="isomorphic pair"):
        load_corpus(root)


def test_missing_graph_file(tmp_path):
    root = _write_corpus(
        tmp_path, "x | a.txt | gone.txt | 1wl=n | nc1wl=n | 2wl=n | 3wl=n | iso=x | prov=derived\n"
    )
    with pytest.raises(CorpusError, match="missing graph file"):
        load_corpus(root)


def test_missing_manifest(tmp_path):
    with pytest.raises(CorpusError, match="cannot read corpus manifest"):
        load_corpus(tmp_path)


def test_empty_manifest(tmp_path):
    (tmp_path / "manifest.txt").write_text("# nothing here\n")
    with pytest.raises(CorpusError, match="no entries"):
        load_corpus(tmp_path)
