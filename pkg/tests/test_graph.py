from __future__ import annotations

from itertools import permutations

import pytest

from qmotif.graph import (
    DisconnectedMotif,
    EmptyNetwork,
    MotifPattern,
    MotifTooSmall,
    ParseError,
    RegulatoryNetwork,
    Relation,
    builtin_motifs,
    canonicalize_motif,
    parse_motif,
    parse_network,
    relation_match,
    serialize_motif,
    serialize_network,
)

A = Relation.ACTIVATION
R = Relation.REPRESSION
U = Relation.UNKNOWN


def _net(*edges):
    return RegulatoryNetwork.from_edges("t", list(edges))


def test_relation_codes_round_trip():
    for rel in Relation:
        assert Relation.from_code(rel.code) is rel
    with pytest.raises(ValueError):
        Relation.from_code("X")


def test_relation_match_wildcard():
    assert relation_match(A, A, wildcard=False) == 1
    assert relation_match(R, A, wildcard=False) == 0
    assert relation_match(U, A, wildcard=False) == 0
    assert relation_match(U, A, wildcard=True) == 1
    assert relation_match(U, R, wildcard=True) == 1
    with pytest.raises(ValueError):
        relation_match(A, U, wildcard=True)  # motifs never carry Unknown


def test_from_edges_sorts_and_indexes():
    net = _net(("b", "c", A), ("a", "b", R))
    assert net.edges[0][:2] == ("a", "b")
    assert net.edge_index[("b", "c")] == 1
    assert net.relation("a", "b") is R


def test_from_edges_drops_self_loops_with_warning():
    with pytest.warns(UserWarning):
        net = _net(("a", "a", A), ("a", "b", A))
    assert len(net.edges) == 1


def test_from_edges_rejects_duplicates():
    with pytest.raises(ValueError):
        _net(("a", "b", A), ("a", "b", R))


def test_induced_subnetwork():
    net = _net(("a", "b", A), ("b", "c", A), ("c", "d", R))
    sub = net.induced(["a", "b", "c"])
    assert [e[:2] for e in sub.edges] == [("a", "b"), ("b", "c")]
    empty = net.induced([])
    assert empty.nodes == () and empty.edges == ()


def test_has_unknown_edges():
    assert not _net(("a", "b", A)).has_unknown_edges()
    assert _net(("a", "b", U)).has_unknown_edges()


def test_network_round_trip_is_byte_identical():
    text = "a\tb\tA\nb\tc\tR\nc\ta\tU\n"
    net = parse_network(text.splitlines(True), name="t")
    assert serialize_network(net) == text


def test_parse_network_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_network(["a\tb\tA\n", "broken line\n"], name="t")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_network(["a\tb\tQ\n"], name="t")
    with pytest.raises(EmptyNetwork):
        parse_network(["# only a comment\n"], name="t")


def test_parse_network_skips_comments_and_blanks():
    net = parse_network(["# header\n", "\n", "a\tb\tA\n"], name="t")
    assert len(net.edges) == 1


def test_motif_validation():
    with pytest.raises(MotifTooSmall):
        MotifPattern(size=2, edges=((1, 2, A),))
    with pytest.raises(DisconnectedMotif):
        MotifPattern(size=4, edges=((1, 2, A), (3, 4, A)))
    with pytest.raises(ValueError):
        MotifPattern(size=3, edges=((1, 1, A), (1, 2, A), (2, 3, A)))
    with pytest.raises(ValueError):
        MotifPattern(size=3, edges=((1, 2, U), (2, 3, A), (3, 1, A)))
    with pytest.raises(ValueError):
        # node 3 never touched
        MotifPattern(size=3, edges=((1, 2, A), (2, 1, A)))


def _canonical_by_scan(motif: MotifPattern) -> tuple:
    """Reference: minimum comparable edge tuple over every relabeling."""
    best = None
    labels = range(1, motif.size + 1)
    for perm in permutations(labels):
        relabel = {old: perm[old - 1] for old in labels}
        edges = tuple(sorted((relabel[a], relabel[b], r.code) for a, b, r in motif.edges))
        if best is None or edges < best:
            best = edges
    return best


def test_canonicalize_matches_permutation_scan():
    cases = [
        MotifPattern(size=3, edges=((2, 3, A), (3, 1, A), (1, 2, A))),
        MotifPattern(size=3, edges=((3, 1, A), (3, 2, R), (1, 2, A))),
        MotifPattern(size=4, edges=((4, 1, A), (4, 2, A), (3, 1, A), (3, 2, A))),
        MotifPattern(size=4, edges=((2, 1, R), (2, 3, A), (1, 4, A), (3, 4, R))),
    ]
    for motif in cases:
        canon = canonicalize_motif(motif)
        assert tuple((a, b, r.code) for a, b, r in canon.edges) == _canonical_by_scan(motif)
        # idempotent
        assert canonicalize_motif(canon).edges == canon.edges
        # node 1 regulates node 2 in every canonical form
        assert canon.edges[0][:2] == (1, 2)


def test_builtin_motifs_are_canonical_fixed_points():
    builtins = builtin_motifs()
    assert set(builtins) == {"cascade", "ffl", "bifan", "biparallel"}
    for name, motif in builtins.items():
        assert canonicalize_motif(motif).edges == motif.edges, name
        assert motif.name == name


def test_builtin_shapes():
    b = builtin_motifs()
    assert b["cascade"].edges == ((1, 2, A), (2, 3, A), (3, 1, A))
    assert b["ffl"].edges == ((1, 2, A), (1, 3, A), (2, 3, A))
    assert b["bifan"].edges == ((1, 2, A), (1, 3, A), (4, 2, A), (4, 3, A))
    assert b["biparallel"].edges == ((1, 2, A), (1, 3, A), (2, 4, A), (3, 4, A))


def test_motif_round_trip():
    motif = builtin_motifs()["bifan"]
    text = serialize_motif(motif)
    back = parse_motif(text.splitlines(True), name="bifan")
    assert back.edges == motif.edges
    assert serialize_motif(back) == text


def test_parse_motif_rejects_unknown_relation():
    with pytest.raises(ParseError):
        parse_motif(["1\t2\tU\n", "2\t3\tA\n", "3\t1\tA\n"], name="bad")
