import json
import math

import pytest

from ssid.arith import FieldSpec, smallest_quadratic_extension
from ssid.classify import oracle_hasse
from ssid.curve import count_points, curve_from_j
from ssid.errors import FieldTooLarge, NotAnEdge, SameCharacteristic, SupersingularVertex
from ssid.selftest import primes_between
from ssid.volcano import (
    build_graph,
    norm_equation,
    path_horizons,
    profile_component,
    reachable_set,
    supersingular_components,
    verify_paths,
    verify_volcano,
)

F11 = FieldSpec(11)


@pytest.fixture(scope="module")
def g11():
    return build_graph(F11, 2)


def test_build_graph_examples(g11):
    assert g11.neighbors(F11(0)) == [F11(1)] * 3
    assert {g11.vertex(i).c0 for i in g11.supersingular} == {0, 1}
    with pytest.raises(FieldTooLarge):
        build_graph(FieldSpec(1000003), 2)
    with pytest.raises(SameCharacteristic):
        build_graph(FieldSpec(5), 5)


def test_graph_matches_oracle_and_degree_bound():
    for field in (FieldSpec(101), smallest_quadratic_extension(7), smallest_quadratic_extension(11)):
        for ell in (2, 3, 5):
            G = build_graph(field, ell)
            for i in range(field.q):
                assert G.out_degree(i) <= ell + 1
                ss = oracle_hasse(curve_from_j(field, G.vertex(i)))
                assert (i in G.supersingular) == ss
                for k in G.adjacency[i]:
                    assert (k in G.supersingular) == ss


def test_profile_q11(g11):
    bound = math.log(math.sqrt(44), 2)
    for comp in g11.components():
        if comp[0] in g11.supersingular:
            with pytest.raises(SupersingularVertex):
                profile_component(g11, comp[0], comp)
            continue
        prof = profile_component(g11, comp[0], comp)
        assert prof.d < bound and prof.d <= 2
        assert 44 == prof.t**2 - prof.v**2 * prof.D
        if all(g11.out_degree(i) < 3 for i in comp):
            assert prof.d == 0
        assert verify_volcano(g11, prof).ok


def test_norm_equation_every_ordinary_j():
    for j in F11.elements():
        E = curve_from_j(F11, j)
        t = 12 - count_points(E)
        if t % 11 == 0:
            continue
        v, D = norm_equation(11, t)
        assert 44 == t * t - v * v * D
        assert D < 0 and (D % 4 in (0, 1))
        # D fundamental: no odd square divides it
        assert all(D % (k * k) for k in range(3, 12, 2))


def test_supersingular_component_regular_and_unique():
    for p in primes_between(3, 51):
        G = build_graph(smallest_quadratic_extension(p), 2)
        comps = supersingular_components(G)
        assert len(comps) == 1, p
        assert all(G.out_degree(i) == 3 for i in comps[0])


def test_reachable_set_examples(g11):
    j0 = F11(0)
    assert reachable_set(g11, j0, F11(1), 1) == {F11(1)}
    with pytest.raises(NotAnEdge):
        reachable_set(g11, j0, F11(2), 3)


def test_path_dichotomy_q11(g11):
    bound = math.log(math.sqrt(44), 2) + 1
    for i, nbrs in g11.adjacency.items():
        if len(nbrs) != 3 or i in g11.supersingular:
            continue
        dying = 0
        for j1 in set(nbrs):
            if any(not reachable_set(g11, i, j1, k) for k in range(1, math.ceil(bound))):
                dying += nbrs.count(j1)
        assert dying >= 1
    assert verify_paths(g11).ok


def test_supersingular_paths_never_die():
    for p in primes_between(3, 32):
        G = build_graph(smallest_quadratic_extension(p), 2)
        m = p.bit_length()
        h = path_horizons(G)
        for i in G.supersingular:
            for j1 in set(G.adjacency[i]):
                assert h[(i, j1)] == math.inf
        # spot-check the horizon against direct enumeration
        i = min(G.supersingular)
        j1 = G.adjacency[i][0]
        assert all(reachable_set(G, i, j1, k) for k in range(1, 2 * m + 1))


def test_horizon_matches_enumeration():
    G = build_graph(FieldSpec(59), 2)
    h = path_horizons(G)
    for (a, b), hor in list(h.items())[:200]:
        if hor == math.inf:
            assert reachable_set(G, a, b, 12)
        else:
            assert reachable_set(G, a, b, int(hor))
            assert not reachable_set(G, a, b, int(hor) + 1)


def test_exports(g11):
    dot = g11.to_dot()
    assert dot.startswith("digraph") and 'v0 -> v1 [label="3"];' in dot
    data = json.loads(g11.to_json())
    assert (data["q"], data["ell"]) == (11, 2)
    v0 = next(v for v in data["vertices"] if v["j"] == "0")
    assert v0 == {"j": "0", "supersingular": True, "neighbors": ["1", "1", "1"]}
    lines = g11.to_csv().splitlines()
    assert lines[0] == "source,target,multiplicity,supersingular"
    assert any(line.startswith("0,1,3,") for line in lines[1:])
