"""Smoke test for the refcascade_py extension module.

Build and install first, e.g. `pip install maturin && maturin develop -m crates/py/Cargo.toml`,
then run `python python/smoke_test.py`.
"""

import math
import os
import tempfile

import refcascade_py as rc

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "fixtures")


def main():
    assert math.isclose(rc.jaccard(["a", "b"], ["a", "c"]), 1 / 3)
    assert rc.jaccard([], []) is None
    assert rc.truncate_code("21.60.Cs", "two") == "21.60"
    assert rc.truncate_code("21.60.Cs", "one") == "21"

    net = rc.Network.from_tables(
        os.path.join(FIXTURES, "five_papers.tsv"), os.path.join(FIXTURES, "five_edges.tsv")
    )
    assert len(net) == 5 and net.edge_count == 5
    assert net.references("A") == ["B", "C"]
    assert net.citations("D") == ["B", "C"]

    c = net.cascade("A")
    assert c["depth"] == 3 and c["size"] == 5
    assert c["layers"] == [["A"], ["B", "C"], ["D"], ["E"]]
    assert net.cascade("E", direction="forward")["layers"][-1] == ["A"]
    assert net.cascade("A", max_depth=1)["widths"] == [1, 2]
    assert net.ancestors("A") == ["E"]
    try:
        net.cascade("nope")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown id accepted")

    syn = rc.Network.synthetic(2000, seed=7, refs="uniform:2:8", recency_half_life=100.0, code_universe=200)
    again = rc.Network.synthetic(2000, seed=7, refs="uniform:2:8", recency_half_life=100.0, code_universe=200)
    assert syn.edge_count == again.edge_count
    report = syn.cohort("1", workers=2)
    assert report["cohort"]["size"] == len(report["cascades"]) > 0
    assert sum(report["depth_distribution"].values()) == report["cohort"]["size"]
    assert report == again.cohort("1", workers=1)

    focal = report["cascades"][-1]["focal_id"]
    recs = syn.recommend(focal, max_generation=3, min_relevance=0.0)
    assert all(1 <= g <= 3 and 0.0 <= r <= 1.0 for _, g, r in recs)
    assert recs == sorted(recs, key=lambda t: (-t[2], t[1], t[0]))
    profile = syn.relevance_profile(focal)
    assert all(p is None or 0.0 <= p <= 1.0 for p in profile)

    with tempfile.TemporaryDirectory() as tmp:
        snap = os.path.join(tmp, "syn.snap")
        syn.save_snapshot(snap)
        loaded = rc.Network.from_snapshot(snap)
        assert len(loaded) == len(syn) and loaded.edge_count == syn.edge_count
        written = syn.write_cohort("1", os.path.join(tmp, "rep"), emit_plots=True)
        assert len(written) == 10

    print("smoke test ok:", syn)


if __name__ == "__main__":
    main()
