import tracemalloc

import pytest
from hypothesis import given, settings, strategies as st

from hybridarith import Int, OverflowSignal, PrecisionLevel, RangeError, RestartMode, run_ladder
from hybridarith.collatz import (
    CollatzComputation,
    CollatzParams,
    TraversalState,
    children,
    jit_available,
    parent,
    traverse,
)
from hybridarith.engine import CollectingSink, Checkpoint

F64, F128, EXT = PrecisionLevel.FIXED64, PrecisionLevel.FIXED128, PrecisionLevel.EXTENDED
TOP64 = 2**63 - 1


def forward_peak(k):
    """Largest value on the forward trajectory from k to 1."""
    peak = k
    while k != 1:
        k = k // 2 if k % 2 == 0 else 3 * k + 1
        peak = max(peak, k)
    return peak


def oracle_set(maxc):
    return {k for k in range(1, maxc + 1) if forward_peak(k) <= maxc}


def visited(maxc, level=EXT, **kw):
    seen = []
    res = traverse(CollatzParams(maxc, kw.pop("budget", None)), level, on_visit=seen.append, **kw)
    return seen, res


# -- parent / children ---------------------------------------------------

def test_parent_examples():
    assert parent(Int(F64, 10)).value == 5
    assert parent(Int(F64, 5)).value == 16
    with pytest.raises(ValueError):
        parent(Int(F64, 1))


def test_parent_signals_past_a_third_of_the_range():
    k = TOP64 // 3 + 1
    k += (k % 2 == 0)
    with pytest.raises(OverflowSignal):
        parent(Int(F64, k))
    assert parent(Int(F128, k)).value == 3 * k + 1


def test_children_examples():
    assert [c.value for c in children(Int(F64, 1), Int(F64, 10))] == [2]
    assert [c.value for c in children(Int(F64, 4), Int(F64, 10))] == [8]
    assert [c.value for c in children(Int(F64, 16), Int(F64, 100))] == [32, 5]


def test_excluding_one_under_four_breaks_a_cycle():
    # forward from 1 reaches 4, so 1 as a child of 4 would revisit the root
    k, path = 1, [1]
    for _ in range(3):
        k = k // 2 if k % 2 == 0 else 3 * k + 1
        path.append(k)
    assert path == [1, 4, 2, 1]


@given(st.integers(1, 10**6))
def test_children_are_predecessors(k):
    maxc = Int(EXT, 10**6)
    for c in children(Int(EXT, k), maxc):
        assert c.value <= maxc.value
        assert parent(c).value == k


def test_children_doubling_guard():
    with pytest.raises(OverflowSignal):
        children(Int(F64, 2**62), Int(F64, TOP64))


# -- traversal ------------------------------------------------------------

@pytest.mark.parametrize("maxc,count", [(1, 1), (2, 2), (4, 3), (100, 49), (10**3, 340), (10**4, 4235)])
def test_small_counts(maxc, count, any_level):
    assert traverse(CollatzParams(maxc), any_level).nodes == count


def test_count_matches_oracle_samples():
    for maxc in [3, 7, 16, 17, 52, 53, 160, 161, 999, 3077, 9232]:
        seen, res = visited(maxc)
        assert set(seen) == oracle_set(maxc)
        assert len(seen) == res.nodes == len(set(seen))


def test_tree_validity_and_order():
    seen, _ = visited(5000)
    position = {k: i for i, k in enumerate(seen)}
    assert seen[0] == 1
    for i, k in enumerate(seen[1:], start=1):
        assert 1 <= k <= 5000
        assert position[parent(Int(EXT, k)).value] < i


def test_visit_sequence_level_independent():
    ref, _ = visited(20000, EXT)
    assert visited(20000, F128)[0] == ref
    assert visited(20000, F64)[0] == ref


@pytest.mark.skipif(not jit_available(), reason="numba missing")
def test_compiled_walker_matches_visiting_walker():
    seen, _ = visited(3000)
    for n in range(1, len(seen) + 1):
        r = traverse(CollatzParams(3000, n), F64, jit=True)
        assert r.nodes == n
        assert r.state.current == seen[n - 1]
    for maxc in [1, 2, 1000, 123457]:
        a = traverse(CollatzParams(maxc), F64, jit=True)
        b = traverse(CollatzParams(maxc), F64, jit=False)
        assert a.nodes == b.nodes and a.exhausted and b.exhausted


def test_count_monotone_in_maxc():
    counts = [traverse(CollatzParams(m), F64).nodes for m in range(1, 400)]
    assert counts == sorted(counts)


def test_budget_stops_exactly():
    r = traverse(CollatzParams(10**6, 1234), F64)
    assert r.nodes == 1234 and not r.exhausted
    assert traverse(CollatzParams(10**6, 1), EXT).nodes == 1


@pytest.mark.parametrize("jit", [True, False])
def test_near_range_maxc_signals(jit):
    if jit and not jit_available():
        pytest.skip("numba missing")
    with pytest.raises(OverflowSignal):
        traverse(CollatzParams(TOP64), F64, jit=jit)
    # the same walk fits comfortably at 128 bits
    assert traverse(CollatzParams(TOP64, 5000), F128).nodes == 5000


def test_maxc_out_of_range():
    with pytest.raises(RangeError):
        traverse(CollatzParams(10**32), F64)
    with pytest.raises(RangeError):
        traverse(CollatzParams(10**48), F128)


def test_unchecked_needs_compiled_walker():
    with pytest.raises(ValueError):
        traverse(CollatzParams(100), F64, checked=False, jit=False)
    if jit_available():
        assert traverse(CollatzParams(10**5), F64, checked=False).nodes == 39706


def test_checkpoint_resume_across_levels():
    params = CollatzParams(10**5)
    cps = []
    traverse(params, F64, checkpoint_hook=cps.append, checkpoint_every=5000)
    assert len(cps) == 39706 // 5000
    full, _ = visited(10**5)
    cp = Checkpoint(cps[3])
    state = TraversalState.from_checkpoint(cp, params.maxc)
    rest = []
    res = traverse(params, F128, resume=state, on_visit=rest.append)
    assert res.nodes == 39706
    assert full[: state.nodes_counted] + rest == full


def test_checkpoint_for_other_maxc_rejected():
    cp = Checkpoint(TraversalState().payload(100))
    with pytest.raises(ValueError):
        TraversalState.from_checkpoint(cp, 101)


def test_constant_memory():
    peaks = []
    for maxc in (10**4, 10**6):
        tracemalloc.start()
        traverse(CollatzParams(maxc), EXT, checkpoint_every=10**9)
        peaks.append(tracemalloc.get_traced_memory()[1])
        tracemalloc.stop()
    assert peaks[1] < 64 * 1024
    assert peaks[1] < 4 * peaks[0] + 8 * 1024


# -- under the engine ---------------------------------------------------

@pytest.mark.parametrize("mode", list(RestartMode))
def test_hybrid_listing_matches_extended(mode):
    params = CollatzParams(TOP64, 3000)
    ext_sink = CollectingSink(buffered=False)
    traverse(params, EXT, sink=ext_sink)

    sink, notes = CollectingSink(), []
    comp = CollatzComputation(params, checkpoint_every=7, list_nodes=True)
    report = run_ladder(comp, F64, mode, sink, notify=notes.append)
    assert report.final_level is F128 and report.escalations == 1
    assert sink.text == ext_sink.text
    assert comp.result.nodes == 3000
    assert report.attempts[1].resumed == (mode is RestartMode.FROM_CHECKPOINT)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3000))
def test_oracle_equivalence_random_maxc(maxc):
    seen, _ = visited(maxc, F64)
    assert set(seen) == oracle_set(maxc)
