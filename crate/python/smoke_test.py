"""Smoke test for the hlvertex Python module.

Build and install the wheel first:

    cd crates/py && maturin build --release -o dist && pip install dist/hlvertex-*.whl
"""

import math

import hlvertex


def close(x, y, tol=1e-12):
    return abs(x - y) <= tol


def main():
    assert hlvertex.conjugate([6, 3, 3, 1]) == [4, 3, 3, 1, 1, 1]
    assert hlvertex.string_from_partition([6, 3, 3, 1], 4, 6) == "-+--++---+"
    assert hlvertex.partition_from_string("-+--++---+") == [6, 3, 3, 1]

    a, t = 0.37, 0.29
    assert close(hlvertex.skew_p([2, 1], [1, 1], a, t), a * (1 - t * t))
    assert hlvertex.skew_p([3, 2], [1], a, t) == 0.0

    v = hlvertex.vertex_probabilities(0.25, 0.5)
    assert close(v["pass_horizontal"], 4 / 7) and close(v["turn_up"], 3 / 7)

    hl = hlvertex.hl_support_distribution(0.25, [0.5], [0.5])
    sv = hlvertex.sixv_outgoing_distribution(0.25, [0.5], [0.5])
    for d in (hl, sv):
        probs = {str(o["key"]["outer"]): o["prob"] for o in d["outcomes"]}
        assert close(probs["[]"], 0.8, 1e-10) and close(probs["[1]"], 0.2, 1e-10), probs

    mm = hlvertex.moment_match([1], 0.5, [0.5], [0.5])
    assert close(mm["lhs"], 4 / 7, 1e-9) and close(mm["rhs"], 4 / 7, 1e-9)

    assert hlvertex.yang_baxter_residual(1, 0, 1, 1, 2, 3, 0.3, 0.6, 0.4) < 1e-12

    tr = hlvertex.run_rsk([1.0, 0.7, 1.3], 0.4, 2.0, seed=5, snapshots=[1.0, 2.0])
    assert len(tr["snapshots"]) == 2
    assert tr == hlvertex.run_rsk([1.0, 0.7, 1.3], 0.4, 2.0, seed=5, snapshots=[1.0, 2.0])

    try:
        hlvertex.sixv_outgoing_distribution(1.5, [0.5], [0.5])
    except ValueError as e:
        assert "0 < t < 1" in str(e)
    else:
        raise AssertionError("invalid t accepted")

    reports = hlvertex.verify_all("quick", 42)
    failed = [r["check"] for r in reports if not r["pass"]]
    assert not failed, failed
    assert not any(math.isnan(r["statistic"]) for r in reports)
    print(f"smoke test ok: {len(reports)} checks passed")


if __name__ == "__main__":
    main()
