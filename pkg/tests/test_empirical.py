"""Exact region enumeration: signatures, LPs, counts, verification."""

import json
from fractions import Fraction

import pytest

from relubound import (
    Architecture,
    Constraint,
    Histogram,
    ReluLayer,
    ReluNetwork,
    dimension_histogram,
    enumerate_regions,
    exact_count,
    feasible,
    load_network,
    random_network,
    sample_count,
    save_network,
    signature_at,
    triangle_network,
    verify_network,
)
from relubound.empirical import network_from_dict, network_to_dict, thread_cap
from relubound.fixtures import (
    TRIANGLE_REGION_COUNT,
    TRIANGLE_SIGNATURES_DOWN,
    TRIANGLE_SIGNATURES_UP,
)

F = Fraction
BOX10 = F(10)


def step_net():
    """One unit on one input: active iff x > 1."""
    return ReluNetwork(1, (ReluLayer(((F(1),),), (F(-1),)),))


class TestNetworkTypes:
    def test_layer_shape_validation(self):
        with pytest.raises(ValueError):
            ReluLayer((), ())
        with pytest.raises(ValueError):
            ReluLayer(((F(1),), (F(1), F(2))), (F(0), F(0)))
        with pytest.raises(ValueError):
            ReluLayer(((F(1),),), (F(0), F(0)))

    def test_network_dimension_chaining(self):
        layer = ReluLayer(((F(1), F(0)),), (F(0),))
        with pytest.raises(ValueError, match="input dimension mismatch"):
            ReluNetwork(1, (layer,))
        with pytest.raises(ValueError):
            ReluNetwork(0, (layer,))

    def test_architecture_property(self):
        net = triangle_network()
        assert net.architecture == Architecture(2, (3,))

    def test_rational_coercion(self):
        layer = ReluLayer((("1/2",),), (1,))
        assert layer.weights[0][0] == F(1, 2)
        assert layer.biases[0] == F(1)
        with pytest.raises(ValueError):
            ReluLayer(((0.5,),), (0,))


class TestSignatureAt:
    def test_strictly_positive_activates(self):
        net = step_net()
        assert signature_at(net, [F(2)]) == ((1,),)
        assert signature_at(net, [F(1)]) == ((0,),)
        assert signature_at(net, [F(0)]) == ((0,),)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            signature_at(step_net(), [F(1), F(2)])

    def test_propagates_through_layers(self):
        # second layer sees relu output of the first
        l1 = ReluLayer(((F(1),),), (F(0),))
        l2 = ReluLayer(((F(1),),), (F(-1),))
        net = ReluNetwork(1, (l1, l2))
        assert signature_at(net, [F(2)]) == ((1,), (1,))
        assert signature_at(net, [F(1, 2)]) == ((1,), (0,))
        assert signature_at(net, [F(-1)]) == ((0,), (0,))


class TestFeasible:
    def test_empty_system_is_the_box(self):
        assert feasible([], BOX10)

    def test_contradiction(self):
        c_pos = Constraint((F(1), F(0)), F(0), strict=True)
        c_nonpos = Constraint((F(1), F(0)), F(0), strict=False)
        assert not feasible([c_pos, c_nonpos], BOX10)

    def test_mixed_system(self):
        c1 = Constraint((F(1), F(0)), F(0), strict=True)
        c2 = Constraint((F(0), F(1)), F(0), strict=False)
        assert feasible([c1, c2], BOX10)

    def test_binding_nonstrict_is_feasible(self):
        # x <= 0 and -x <= 0 leaves only x = 0, still nonempty
        c1 = Constraint((F(1),), F(0), strict=False)
        c2 = Constraint((F(-1),), F(0), strict=False)
        assert feasible([c1, c2], BOX10)

    def test_region_outside_box_missed(self):
        # x > 3 is empty inside box radius 2
        c = Constraint((F(1),), F(-3), strict=True)
        assert feasible([c], BOX10)
        assert not feasible([c], F(2))

    def test_bad_radius(self):
        with pytest.raises(ValueError):
            feasible([], F(0))


class TestTriangleFixture:
    def test_down_variant(self):
        count, sigs = exact_count(triangle_network(), BOX10)
        assert count == TRIANGLE_REGION_COUNT
        assert {s[0] for s in sigs} == set(TRIANGLE_SIGNATURES_DOWN)

    def test_up_variant(self):
        count, sigs = exact_count(triangle_network(third_unit_up=True), BOX10)
        assert count == TRIANGLE_REGION_COUNT
        assert {s[0] for s in sigs} == set(TRIANGLE_SIGNATURES_UP)

    def test_variants_share_dimension_histogram(self):
        for up in (False, True):
            res = enumerate_regions(triangle_network(third_unit_up=up), BOX10)
            assert dimension_histogram(res.multisignatures, 2) == Histogram((1, 3, 3))

    def test_witnesses_realize_their_signatures(self):
        net = triangle_network()
        res = enumerate_regions(net, BOX10)
        assert len(res.records) == TRIANGLE_REGION_COUNT
        seen = set()
        for rec in res.records:
            assert signature_at(net, rec.witness) == rec.prefix
            assert rec.witness not in seen
            seen.add(rec.witness)

    def test_verify_chain_values(self):
        report = verify_network(triangle_network(), BOX10)
        assert report.values() == (7, 7, 7, 8)
        assert report.chain_ok
        assert report.recursion_ok


class TestEnumeration:
    def test_three_thresholds_on_a_line(self):
        layer = ReluLayer(
            ((F(1),), (F(1),), (F(1),)), (F(-1), F(-2), F(-3))
        )
        net = ReluNetwork(1, (layer,))
        count, sigs = exact_count(net, BOX10)
        assert count == 4

    def test_zero_network_single_region(self):
        layer = ReluLayer(((F(0), F(0)), (F(0), F(0))), (F(0), F(0)))
        net = ReluNetwork(2, (layer,))
        count, sigs = exact_count(net, BOX10)
        assert count == 1
        assert sigs == frozenset({((0, 0),)})

    def test_guard_rejects_large(self):
        arch = Architecture(4, (2,))
        net = random_network(arch, 0)
        with pytest.raises(ValueError, match="instance too large"):
            exact_count(net, BOX10)

    def test_guard_override(self):
        arch = Architecture(4, (1,))
        net = random_network(arch, 0)
        count, _ = exact_count(net, BOX10, allow_large=True)
        assert count == 2

    def test_float_lp_agrees_on_fixture(self):
        count, sigs = exact_count(triangle_network(), BOX10, exact=False)
        assert count == TRIANGLE_REGION_COUNT

    def test_thread_fanout_matches_sequential(self, monkeypatch):
        arch = Architecture(2, (3, 2))
        net = random_network(arch, 9)
        baseline = exact_count(net, BOX10)
        monkeypatch.setenv("RELUBOUND_THREADS", "3")
        assert thread_cap() == 3
        assert exact_count(net, BOX10) == baseline

    def test_thread_cap_parsing(self, monkeypatch):
        monkeypatch.setenv("RELUBOUND_THREADS", "not-a-number")
        assert thread_cap() == 1
        monkeypatch.setenv("RELUBOUND_THREADS", "-2")
        assert thread_cap() == 1

    def test_per_layer_prefix_sets_nest(self):
        net = random_network(Architecture(2, (3, 2)), 4)
        res = enumerate_regions(net, BOX10)
        assert len(res.prefixes_per_layer) == 2
        first = {p[0] for p in res.prefixes_per_layer[1]}
        assert first <= {p[0] for p in res.prefixes_per_layer[0]}


class TestSampling:
    def test_single_sample(self):
        assert sample_count(triangle_network(), 1, BOX10, seed=0) == 1

    def test_deterministic(self):
        a = sample_count(triangle_network(), 500, BOX10, seed=42)
        b = sample_count(triangle_network(), 500, BOX10, seed=42)
        assert a == b

    def test_lower_bounds_exact(self):
        for seed in range(5):
            net = random_network(Architecture(2, (3,)), seed)
            sampled = sample_count(net, 300, BOX10, seed=seed)
            exact, _ = exact_count(net, BOX10)
            assert sampled <= exact

    def test_saturates_fixture(self):
        assert sample_count(triangle_network(), 4000, BOX10, seed=1) == 7

    def test_needs_samples(self):
        with pytest.raises(ValueError):
            sample_count(triangle_network(), 0, BOX10)


class TestRandomNetwork:
    def test_deterministic_per_seed(self):
        arch = Architecture(2, (3,))
        assert random_network(arch, 12) == random_network(arch, 12)

    def test_shapes(self):
        net = random_network(Architecture(2, (3,)), 0)
        assert net.layers[0].in_dim == 2
        assert net.layers[0].out_dim == 3

    def test_distinct_seeds_distinct_networks(self):
        arch = Architecture(2, (3,))
        nets = {network_to_dict(random_network(arch, s)).__str__() for s in range(100)}
        assert len(nets) == 100

    def test_scale_validation(self):
        with pytest.raises(ValueError):
            random_network(Architecture(1, (1,)), 0, scale=0)


class TestVerifyNetwork:
    def test_chain_holds_on_random_nets(self):
        for seed in range(8):
            net = random_network(Architecture(2, (3, 2)), seed)
            report = verify_network(net, BOX10)
            assert report.chain_ok
            assert report.recursion_ok
            assert report.exact <= report.binomial <= report.zaslavsky <= report.naive

    def test_report_serializes(self):
        report = verify_network(triangle_network(), BOX10)
        data = report.to_dict()
        assert data["exact_count"] == 7
        assert data["chain_ok"] is True
        json.dumps(data)


class TestNetworkJson:
    def test_round_trip(self, tmp_path):
        net = random_network(Architecture(2, (3, 2)), 5)
        path = tmp_path / "net.json"
        save_network(net, path)
        assert load_network(path) == net

    def test_accepts_fraction_strings_and_ints(self):
        data = {
            "n0": 1,
            "layers": [{"W": [["1/2"], [2]], "b": ["-3/4", 0]}],
        }
        net = network_from_dict(data)
        assert net.layers[0].weights == ((F(1, 2),), (F(2),))
        assert net.layers[0].biases == (F(-3, 4), F(0))

    def test_rejects_floats(self):
        data = {"n0": 1, "layers": [{"W": [[0.5]], "b": [0]}]}
        with pytest.raises(ValueError):
            network_from_dict(data)
