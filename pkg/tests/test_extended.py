from hypothesis import given, settings, strategies as st

from hybridarith import Int, PrecisionLevel, addint, divint, from_decimal, mulint, subint, to_decimal

EXT = PrecisionLevel.EXTENDED

big = st.integers(min_value=-(10**1000), max_value=10**1000)


def E(v):
    return Int(EXT, v)


def add(a, b):
    c = E(0)
    addint(E(a), E(b), c)
    return c.value


def mul(a, b):
    c = E(0)
    mulint(E(a), E(b), c)
    return c.value


def test_power_tower():
    a, c = E(5**32), E(0)
    mulint(a, a, c)
    assert to_decimal(c) == "542101086242752217003726400434970855712890625"


@settings(max_examples=50)
@given(big)
def test_additive_identity(x):
    assert add(0, x) == x


@settings(max_examples=50)
@given(big, big, big)
def test_ring_laws(a, b, c):
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@settings(max_examples=50)
@given(big, big)
def test_division_identity(a, b):
    if b == 0:
        return
    x, q = E(a), E(0)
    divint(x, E(b), q)
    back = E(0)
    mulint(q, E(b), back)
    addint(back, x, back)
    assert back.value == a
    assert abs(x.value) < abs(b)


@settings(max_examples=50)
@given(big)
def test_decimal_round_trip(a):
    assert from_decimal(to_decimal(E(a)), EXT).value == a


def test_subint_large():
    c = E(0)
    subint(E(10**999), E(10**999 - 1), c)
    assert c.value == 1
