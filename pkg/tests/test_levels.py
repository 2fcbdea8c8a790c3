import pytest

from hybridarith import GuardBounds, PrecisionLevel, guard_bounds


def isqrt_oracle(n):
    # bisection, independent of math.isqrt
    lo, hi = 0, 1 << (n.bit_length() // 2 + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def test_ladder_order():
    L = PrecisionLevel
    assert L.FIXED64 < L.FIXED128 < L.EXTENDED
    assert L.FIXED64.next() is L.FIXED128
    assert L.FIXED128.next() is L.EXTENDED
    with pytest.raises(ValueError):
        L.EXTENDED.next()


def test_word_sizes_and_names():
    assert PrecisionLevel.FIXED64.word_size == 64
    assert PrecisionLevel.FIXED128.word_size == 128
    assert PrecisionLevel.EXTENDED.word_size is None
    assert [str(x) for x in PrecisionLevel] == ["Fixed64", "Fixed128", "Extended"]


@pytest.mark.parametrize("text,level", [
    ("64", PrecisionLevel.FIXED64),
    ("Fixed128", PrecisionLevel.FIXED128),
    ("ext", PrecisionLevel.EXTENDED),
])
def test_parse(text, level):
    assert PrecisionLevel.parse(text) is level


def test_parse_rejects_unknown():
    with pytest.raises(ValueError):
        PrecisionLevel.parse("32")


def test_bounds_w64():
    b = GuardBounds.for_word_size(64)
    assert b.add == 4611686018427387903
    assert b.lin == 2147483647
    assert b.mul == 3037000499
    top = 2**63 - 1
    assert b.mul**2 <= top < (b.mul + 1) ** 2
    assert b.max_value == top


def test_bounds_w128():
    b = GuardBounds.for_word_size(128)
    assert b.lin == 9223372036854775807
    assert b.mul == isqrt_oracle(2**127 - 1)
    assert b.mul**2 <= 2**127 - 1 < (b.mul + 1) ** 2
    assert b.add == 2**126 - 1


@pytest.mark.parametrize("w", [8, 16, 32, 64, 128, 256])
def test_bound_ordering(w):
    b = GuardBounds.for_word_size(w)
    assert b.lin <= b.mul <= b.add


def test_extended_has_no_bounds():
    assert guard_bounds(PrecisionLevel.EXTENDED) is None
    assert guard_bounds(PrecisionLevel.FIXED64).word_size == 64
