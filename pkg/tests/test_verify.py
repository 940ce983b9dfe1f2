from ku_stab.verify import FAIL, PASS, all_tags, run_suite


def test_suite_passes():
    items = run_suite()
    assert len(items) >= 25
    failed = [(i.id, i.details) for i in items if i.status != PASS]
    assert not failed


def test_ids_unique_and_sorted():
    ids = [i.id for i in run_suite()]
    assert ids == sorted(set(ids))


def test_filter():
    assert [i.id for i in run_suite("gram")] == ["sigma-gram-det"]
    assert run_suite("no-such-tag") == []
    assert "gram" in all_tags()


def test_items_have_locations():
    for i in run_suite():
        assert i.paper_location
        assert i.to_json()["status"] in (PASS, FAIL, "inconclusive")
