import pytest

from jordanbounds import abelian
from jordanbounds.abelian import FiniteAbelianGroup
from jordanbounds.caps import Caps, CapExceeded
from jordanbounds.enumeration import (IsogenyClass, SemisimpleType, class_table,
                                      embedding_dim, enumerate_central_subgroups,
                                      enumerate_semisimple, isogeny_classes,
                                      max_center_order, min_faithful_dim,
                                      quotient_center)
from jordanbounds.rootsystems import SimpleType

from oracles import exhaustive_min_faithful

A1 = SimpleType("A", 1)
A2 = SimpleType("A", 2)


def names(types):
    return [str(t) for t in types]


def cls_of(type_names, gens=()):
    base = SemisimpleType(tuple(SimpleType.parse(n) for n in type_names))
    return IsogenyClass.from_generators(base, gens)


def test_enumerate_semisimple_small():
    assert names(enumerate_semisimple(2)) == ["1"]
    assert names(enumerate_semisimple(3)) == ["1", "A1"]
    assert names(enumerate_semisimple(8)) == ["1", "A1", "A1xA1", "A2"]
    assert names(enumerate_semisimple(0)) == ["1"]
    listing = enumerate_semisimple(16)
    assert "A2xA2" in names(listing) and "A1xA1xA1xA1xA1" in names(listing)
    dims = [s.dim for s in listing]
    assert dims == sorted(dims)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_semisimple(100)
    small_caps = Caps(enumeration_dim=4)
    with pytest.raises(CapExceeded):
        enumerate_semisimple(5, small_caps)


def test_enumerate_central_subgroups_counts():
    assert len(enumerate_central_subgroups(FiniteAbelianGroup((2,)))) == 2
    assert len(enumerate_central_subgroups(FiniteAbelianGroup((4,)))) == 3
    assert len(enumerate_central_subgroups(FiniteAbelianGroup((2, 2)))) == 5
    assert len(enumerate_central_subgroups(FiniteAbelianGroup((6,)))) == 4
    with pytest.raises(CapExceeded):
        enumerate_central_subgroups(FiniteAbelianGroup((2, 4096)))


def test_isogeny_class_validation():
    base = SemisimpleType((A1, A1))
    IsogenyClass.from_generators(base, [(1, 1)])
    with pytest.raises(ValueError):
        IsogenyClass(base, frozenset([(1, 1)]))  # missing identity
    with pytest.raises(ValueError):
        IsogenyClass(base, frozenset([(0, 0), (1, 0), (1, 1)]))  # not closed


def test_quotient_center():
    assert quotient_center(cls_of(["A1"], [(1,)])).is_trivial
    a3_halved = cls_of(["A3"], [(2,)])
    assert quotient_center(a3_halved).factors == (2,)
    diag = cls_of(["A1", "A1"], [(1, 1)])
    assert quotient_center(diag).factors == (2,)
    sc = cls_of(["A1", "A1"])
    assert quotient_center(sc).factors == (2, 2)


def test_quotient_center_never_exceeds_cover():
    for base in enumerate_semisimple(10):
        for cls in isogeny_classes(base):
            assert quotient_center(cls).order <= base.center_order
            assert quotient_center(cls).order * len(cls.kernel) == base.center_order


def test_min_faithful_examples():
    assert min_faithful_dim(cls_of(["A1"])) == 2
    assert min_faithful_dim(cls_of(["A1"], [(1,)])) == 3
    assert min_faithful_dim(cls_of(["A1", "A1"], [(1, 1)])) == 4
    assert min_faithful_dim(cls_of([])) == 0
    assert min_faithful_dim(cls_of(["A2"])) == 3
    assert min_faithful_dim(cls_of(["A2"], [(1,)])) == 8
    assert min_faithful_dim(cls_of(["G2"])) == 7
    assert min_faithful_dim(cls_of(["B2"])) == 4
    assert min_faithful_dim(cls_of(["B2"], [(1,)])) == 5
    assert min_faithful_dim(cls_of(["A3"], [(2,)])) == 6
    assert min_faithful_dim(cls_of(["A3"], [(1,)])) == 15


def test_min_faithful_search_cap_is_explicit():
    with pytest.raises(CapExceeded):
        min_faithful_dim(cls_of(["A2"], [(1,)]), Caps(search_dim=5))


def test_min_faithful_agrees_with_exhaustive_oracle_dim10():
    for base in enumerate_semisimple(10):
        if base.is_trivial:
            continue
        for cls in isogeny_classes(base):
            got = min_faithful_dim(cls)
            cap = 2 * got
            assert exhaustive_min_faithful(cls, cap) == got, cls.name()


def test_direct_sum_bound_over_factors():
    for base in enumerate_semisimple(12):
        if base.is_trivial:
            continue
        sc = IsogenyClass.from_generators(base, [])
        total = sum(min_faithful_dim(
            IsogenyClass.from_generators(SemisimpleType((f,)), []))
            for f in base.factors)
        assert min_faithful_dim(sc) <= total


def test_embedding_dim_values():
    assert [embedding_dim(n) for n in range(9)] == [0, 0, 0, 3, 3, 3, 6, 6, 8]
    assert embedding_dim(2) == 0
    # the even-coordinate-sum quotients of SL2 powers dominate from dim 12 on
    assert embedding_dim(12) == 16
    assert embedding_dim(15) == 32
    assert embedding_dim(16) == 32


def test_embedding_dim_monotone():
    values = [embedding_dim(n) for n in range(17)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_max_center_order():
    assert max_center_order(2) == 1
    assert max_center_order(3) == 2
    assert max_center_order(8) == 4
    for n in range(1, 13):
        assert max_center_order(n) <= n ** n


def test_class_table_shape():
    rows = class_table(6)
    by_name = {r["name"]: r for r in rows}
    assert by_name["A1"]["min_faithful_dim"] == "2"
    assert by_name["A1/adj"]["min_faithful_dim"] == "3"
    assert by_name["A1xA1/(1,1)"]["min_faithful_dim"] == "4"
    assert by_name["A1xA1/adj"]["kernel_order"] == "4"
    assert by_name["A1"]["center"] == ["2"]
    assert all(r["dim"] <= 6 for r in rows)


def test_class_naming():
    assert cls_of(["A1"]).name() == "A1"
    assert cls_of(["A1"], [(1,)]).name() == "A1/adj"
    assert cls_of(["A1", "A1"], [(1, 1)]).name() == "A1xA1/(1,1)"
    assert cls_of(["A3"], [(2,)]).name() == "A3/(2)"
