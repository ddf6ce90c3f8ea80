import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from apexminor.apex import (ApexExtractor, ApexInstance, SubgridScheme, _trial_rng, apex_exact_threshold,
                            apex_grid_threshold, bars_and_cross, block_size, candidate_model, extract_apex,
                            risk_pairs, simple_threshold)
from apexminor.certify import build_model, verify_minor_model
from apexminor.errors import ExtractionFailure, InvalidArgument, PreconditionError
from apexminor.graph import Graph, complete_graph, make_grid
from apexminor.models import double_model, identity_grid_model
from apexminor.oracles import minor_test

from conftest import dominant_grid, grid_with_apex, k4_apex_fixture


@pytest.fixture(scope="module")
def k4_in_3x3():
    host, spec = make_grid(3, 3)
    m = minor_test(host, complete_graph(4))
    return build_model(host, m.pattern, m.branch_sets, host_grid=spec)


@pytest.fixture(scope="module")
def r2_extractor():
    inst, hm = k4_apex_fixture()
    g, spec, alpha = grid_with_apex(60, 60, lambda x, y: x % 2 == 0)
    return ApexExtractor(g, alpha, identity_grid_model(g, spec), inst, hm)


def test_thresholds():
    assert apex_grid_threshold(1, 5, 4) == 320
    assert block_size(1, 4) == 1
    assert block_size(2, 3) == 13
    assert apex_exact_threshold(2, 3, 2, 3) == (53, 79, 13)
    assert simple_threshold(5, 1) == 8
    assert simple_threshold(7, 0) == 1
    assert simple_threshold(3, 4) == 256
    assert simple_threshold(40, 30) == 78 ** 30
    for bad in [(0, 5, 4), (1, 1, 1), (1, 5, 5), (1, 5, 0)]:
        with pytest.raises(InvalidArgument):
            apex_grid_threshold(*bad)


def test_bars_and_cross_examples():
    s = SubgridScheme(1, 1, 1)
    h, v, c = bars_and_cross(s, 2, 1, 1)
    assert h == v == c == {s.vertex(2, 1, 1, 1)}
    h, v, c = bars_and_cross(SubgridScheme(1, 1, 3), 1, 2, 2)
    assert len(c) == 5
    with pytest.raises(InvalidArgument):
        bars_and_cross(SubgridScheme(1, 1, 3), 3, 1, 1)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_bars_cross_once(n, i, data):
    s = SubgridScheme(1, 1, n)
    i, j = min(i, n), data.draw(st.integers(1, n))
    h, _, _ = bars_and_cross(s, 1, 1, i)
    _, v, _ = bars_and_cross(s, 1, 1, j)
    assert len(h & v) == 1 and len(h) == len(v) == n


def test_scheme_index_bijective():
    s = SubgridScheme(2, 1, 3)
    ids = [s.vertex(a, b, p, q) for a, b in s.blocks() for p in range(1, 4) for q in range(1, 4)]
    assert sorted(ids) == list(range(s.grid.size))


def test_candidate_single_vertex():
    host, spec = make_grid(1, 1)
    dm = double_model(build_model(host, Graph.empty(1), {0: frozenset({0})}, host_grid=spec))
    s = SubgridScheme(1, 1, 3)
    for offsets in [dict.fromkeys(s.blocks(), 1), dict(zip(s.blocks(), (1, 2, 3, 2)))]:
        m = candidate_model(s, dm, offsets)
        assert verify_minor_model(m) == []


def test_candidate_n1_k4(k4_in_3x3):
    dm = double_model(k4_in_3x3)
    s = SubgridScheme(3, 3, 1)
    assert verify_minor_model(candidate_model(s, dm, dict.fromkeys(s.blocks(), 1))) == []


@pytest.mark.parametrize("n", [5, 7])
def test_candidate_random_offsets(k4_in_3x3, n):
    dm = double_model(k4_in_3x3)
    s = SubgridScheme(3, 3, n)
    rng = np.random.default_rng(n)
    for _ in range(200):
        offsets = {blk: int(rng.integers(1, n + 1)) for blk in s.blocks()}
        m = candidate_model(s, dm, offsets)
        assert verify_minor_model(m) == []
        # every block met by C_u belongs to u in the doubled model
        base = dm.model.host_grid
        owner = dm.model.owner_map()
        for u, cu in m.branch_sets.items():
            for c in cu:
                x, y = s.grid.coords(c)
                assert owner[base.vertex((x - 1) // n + 1, (y - 1) // n + 1)] == u


def test_risk_pairs_empty_at_radius_one(k4_in_3x3):
    g, spec, alpha = dominant_grid(13)
    inst = ApexInstance.from_apex(complete_graph(5), 4)
    ex = ApexExtractor(g, alpha, identity_grid_model(g, spec), inst, k4_in_3x3)
    assert ex.pairs == []


def test_risk_pairs_match_enumeration(r2_extractor):
    ex = r2_extractor
    s, base = ex.scheme, ex.dm.model.host_grid
    anchor_blocks = {base.coords(ex.dm.anchors[u]) for u in ex.nz}
    expected = set()
    for c in range(s.grid.size):
        x, y = s.grid.coords(c)
        (a, p), (b, q) = divmod(x - 1, s.n), divmod(y - 1, s.n)
        if (a + 1, b + 1) in anchor_blocks and p == q:
            expected |= {(c, w) for w in ex.paths.path(c)[1:-1]}
    got = {(rp.v, rp.x) for rp in ex.pairs}
    assert got == expected and expected
    assert len(ex.pairs) <= ex.inst.d * s.n * (ex.r - 1)


def test_risk_pair_bound_small_block():
    # d=4, n=1 scheme on an r=2 host: at most 4 pairs
    inst = ApexInstance.from_apex(complete_graph(5), 4)
    host, spec = make_grid(3, 3)
    m = minor_test(host, complete_graph(4))
    dm = double_model(build_model(host, m.pattern, m.branch_sets, host_grid=spec))
    g, gspec, alpha = grid_with_apex(6, 6, lambda x, y: x % 2 == 0)
    from apexminor.graph import centre_paths
    s = SubgridScheme(3, 3, 1)
    assert len(risk_pairs(s, dm, centre_paths(g, alpha), inst.neighbors_in_h())) <= 4


def test_bad_trial_frequency(r2_extractor):
    ex = r2_extractor
    bound = 4 * (ex.r - 1) * ex.inst.d / ex.scheme.n
    bad = sum(bool(ex.run_trial(ex.sample_offsets(_trial_rng(99, t)))[1]) for t in range(1000))
    assert bad / 1000 <= bound + 0.05


def test_extract_r2_fixture_models_verify(r2_extractor):
    inst, hm = k4_apex_fixture()
    ex = r2_extractor
    for seed in range(5):
        m = extract_apex(ex.g, ex.alpha, _gm60(ex.g), inst, hm, seed).model
        assert verify_minor_model(m) == []
        cz = m.branch_sets[inst.z]
        assert all(not (cz & m.branch_sets[u]) for u in m.branch_sets if u != inst.z)


def _gm60(g):
    return identity_grid_model(g, make_grid(60, 60)[1])


def test_extract_k5_radius_one(k4_in_3x3):
    g, spec, alpha = dominant_grid(7)
    inst = ApexInstance.from_apex(complete_graph(5), 4)
    res = extract_apex(g, alpha, identity_grid_model(g, spec), inst, k4_in_3x3, seed=3)
    assert res.trials == 1 and res.n == 1 and verify_minor_model(res.model) == []


def test_extract_is_deterministic():
    inst, hm = k4_apex_fixture()
    g, spec, alpha = grid_with_apex(60, 60, lambda x, y: x % 2 == 0)
    gm = identity_grid_model(g, spec)
    a = extract_apex(g, alpha, gm, inst, hm, seed=12345)
    b = extract_apex(g, alpha, gm, inst, hm, seed=12345)
    assert a.model.same_certificate(b.model) and a.offsets == b.offsets


def test_extract_preconditions(k4_in_3x3):
    inst = ApexInstance.from_apex(complete_graph(5), 4)
    g, spec, alpha = dominant_grid(6)
    with pytest.raises(PreconditionError):
        extract_apex(g, alpha, identity_grid_model(g, spec), inst, k4_in_3x3, seed=0)
    g, spec = make_grid(9, 9)
    with pytest.raises(PreconditionError) as info:
        extract_apex(g, 0, identity_grid_model(g, spec), inst, k4_in_3x3, seed=0, radius=1)
    assert info.value.witness is not None


def test_trials_exhausted_is_reported():
    inst, hm = k4_apex_fixture()
    g, spec, alpha = grid_with_apex(60, 60, lambda x, y: x % 2 == 0)
    gm = identity_grid_model(g, spec)
    ex = ApexExtractor(g, alpha, gm, inst, hm)
    seed = next(s for s in range(500) if ex.run_trial(ex.sample_offsets(_trial_rng(s, 0)))[0] is None)
    with pytest.raises(ExtractionFailure) as info:
        extract_apex(g, alpha, gm, inst, hm, seed=seed, max_trials=1)
    assert info.value.code == "trials-exhausted"
