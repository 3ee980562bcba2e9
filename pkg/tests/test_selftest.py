from rendezvous.coloring import color_edge
from rendezvous.selftest import run_selftest


def test_selftest_passes():
    out = run_selftest(ramsey_max=64)
    assert out["passed"], [c for c in out["checks"] if not c["passed"]]
    assert out["anchors"] == {"R_s(3,2)": 3}
    assert {c["module"] for c in out["checks"]} == {"strings", "coloring", "schedules", "simulator"}


def test_selftest_surfaces_bad_coloring():
    def mutated(a, b, n):
        return 1 if b - a == 1 else color_edge(a, b, n)

    out = run_selftest(color_rule=mutated, ramsey_max=16)
    assert not out["passed"]
    failing = [c for c in out["checks"] if not c["passed"]]
    assert [c["module"] for c in failing] == ["coloring"]
    a, b, c = failing[0]["counterexample"]["triple"]
    assert a < b < c and mutated(a, b, 16) == mutated(b, c, 16)
