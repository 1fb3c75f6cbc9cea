import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from voalog import basis_vector, graded_basis, sector, super_ns, triplet
from voalog.fock import (
    FockElement,
    basis_from_json,
    basis_to_json,
    colored_partitions,
    component_weights,
    element_from_json,
    element_to_json,
    fermion_words,
    weight_of,
)
from voalog.lattice import affine
from voalog.oracle import oracle_dims
from voalog.rational import Q


def test_colored_partitions_counts():
    assert len(colored_partitions(5, 1)) == 7
    assert len(colored_partitions(2, 2)) == 5
    assert len(colored_partitions(0, 3)) == 1


def test_fermion_words():
    # distinct positive half-integers
    assert [tuple(w) for w in fermion_words(Q(2))] == [(Q(3, 2), Q(1, 2))]
    assert len(fermion_words(Q(1, 2))) == 1
    assert len(fermion_words(Q(1))) == 0
    assert len(fermion_words(Q(4))) == 2  # 7/2+1/2, 5/2+3/2


@pytest.mark.parametrize(
    "sec, maxw, charge",
    [
        (sector(triplet(2), 0), 6, None),
        (sector(triplet(2), Q(-1, 2)), 6, None),
        (sector(triplet(3, 2), Q(1, 6)), 5, None),
        (sector(super_ns(3, 1), 0), 4, None),
        (sector(affine(), 0, 0), 4, 0),
        (sector(affine(), -3, 1), 4, 1),
    ],
)
def test_graded_dims_match_oracle(sec, maxw, charge):
    got = {w: len(graded_basis(sec, w, charge)) for w in component_weights(sec, maxw, charge)}
    got = {w: d for w, d in got.items() if d}
    assert got == {w: d for w, d in oracle_dims(sec, maxw, charge).items() if d}


def test_basis_vectors_have_requested_weight():
    sec = sector(super_ns(3, 1), 0)
    for w in (Q(1, 2), Q(3, 2), Q(2)):
        for b in graded_basis(sec, w):
            assert weight_of(sec.config, b) == w


def test_weight_of_fermion_state():
    cfg = super_ns(3, 1)
    b = basis_vector((0,), fermions=(Q(3, 2), Q(1, 2)))
    assert weight_of(cfg, b) == 2


points = st.tuples(st.fractions(min_value=-3, max_value=3, max_denominator=6))
bosons = st.lists(st.tuples(st.just(0), st.integers(min_value=1, max_value=4)), max_size=3)


@settings(max_examples=60, deadline=None)
@given(points, bosons, st.integers(min_value=-5, max_value=5))
def test_json_roundtrip(point, bos, c):
    b = basis_vector(point, bos)
    assert basis_from_json(json.loads(json.dumps(basis_to_json(b)))) == b
    e = FockElement.basis(b, Q(c, 3))
    assert element_from_json(json.loads(json.dumps(element_to_json(e)))) == e


def test_element_arithmetic_cancels():
    b = basis_vector((0,), [(0, 1)])
    e = FockElement.basis(b, 2)
    assert not (e - e)
    assert (e * 0) == 0
    assert (e + e).coeff(b) == 4
