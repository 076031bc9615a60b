import pytest

from equivk.verify import CHECKS, Corpus, expected_gl_row, run_suite


def test_small_suite_passes():
    results = run_suite("small")
    assert len(results) == len(CHECKS)
    failed = [r for r in results if not r.passed]
    assert not failed, [(r.name, r.detail) for r in failed]


def test_unknown_suite():
    with pytest.raises(ValueError):
        Corpus("huge")


def test_corpus_covers_families():
    fams = {e.family for e in Corpus("small").entries}
    assert fams >= {"trivial", "cyclic_rot", "cyclic_refl", "dihedral", "sym", "alt", "hyperoctahedral"}


def test_expected_gl_rows():
    assert [str(x) for x in expected_gl_row(2)] == ["Z", "(+)_N Z"]
    assert [str(x) for x in expected_gl_row(5)] == ["0", "(+)_N Z"]
