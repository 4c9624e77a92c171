import itertools

import pytest

from dyadiclat import (
    FieldError,
    ZERO_IDEAL,
    hilbert,
    is_square,
    make_field,
    parse_elt,
    quadratic_defect,
    square_class,
    square_class_reps,
    valuation,
)


def test_make_field_validation():
    with pytest.raises(FieldError):
        make_field(0)
    with pytest.raises(FieldError):
        make_field(-2)
    with pytest.raises(FieldError):
        make_field(1, precision=4)


def test_make_field_q2(q2):
    assert q2.rho == q2.elt(1)
    assert q2.delta == q2.elt(5)


def test_make_field_f2(f2):
    # residue polynomial x^2 + x + 1, rho of residue trace 1 found by search
    assert f2.modulus == (1, 1)
    assert f2._res_trace(f2.rho.residue(1)) == 1


def test_make_field_deterministic():
    a, b = make_field(2), make_field(2)
    assert a.modulus == b.modulus and a.rho == b.rho


def test_valuation(q2):
    assert valuation(q2.elt(2)) == 1
    assert valuation(q2.elt(5)) == 0
    assert valuation(q2.elt(0)) == float("inf")
    assert valuation(q2.elt(12)) == 2
    assert valuation(q2.elt(3).shift(-2)) == -2
    # v(xy) = v(x) + v(y)
    for a in (2, 3, 12, 40):
        for b in (1, 6, 56):
            assert valuation(q2.elt(a) * q2.elt(b)) == valuation(q2.elt(a)) + valuation(q2.elt(b))


def test_is_square(q2):
    assert is_square(q2.elt(4))
    assert not is_square(q2.elt(5))
    assert is_square(q2.elt(17))  # 17 = 1 mod 8, Hensel lifts
    assert not is_square(q2.elt(2))
    with pytest.raises(FieldError):
        is_square(q2.elt(0))


def test_square_class(q2):
    assert square_class(q2.elt(1)) == square_class(q2.elt(9))
    assert square_class(q2.elt(5)) == q2.delta_class
    assert square_class(q2.elt(3)) == square_class(q2.elt(27))
    with pytest.raises(FieldError):
        square_class(q2.elt(0))


def test_quadratic_defect(q2):
    assert quadratic_defect(q2.elt(1)) == ZERO_IDEAL
    assert quadratic_defect(q2.elt(5)).exp == 2
    assert quadratic_defect(q2.elt(3)).exp == 1
    assert quadratic_defect(q2.elt(7)).exp == 1
    with pytest.raises(FieldError):
        quadratic_defect(q2.elt(2))
    with pytest.raises(FieldError):
        quadratic_defect(q2.elt(0))


def test_hilbert_examples(q2):
    for b in (1, 3, 5, 7, 2, 6, 10, 14):
        assert hilbert(q2.elt(1), q2.elt(b)) == 1
    assert hilbert(q2.elt(5), q2.elt(2)) == -1  # norm group of the unramified ext
    assert hilbert(q2.elt(-1), q2.elt(-1)) == -1
    with pytest.raises(FieldError):
        hilbert(q2.elt(0), q2.elt(1))


def test_hilbert_neg_one_brute(q2):
    # z^2 = -x^2 - y^2 has no primitive zero mod 32 with a usable gradient
    found = False
    for x, y, z in itertools.product(range(32), repeat=3):
        if x % 2 == 0 and y % 2 == 0 and z % 2 == 0:
            continue
        if (z * z + x * x + y * y) % 32 == 0:
            grads = [(2 * z) % 32, (2 * x) % 32, (2 * y) % 32]
            vals = [(g & -g).bit_length() - 1 if g else 99 for g in grads]
            if min(vals) <= 2:
                found = True
    assert not found


def test_square_class_reps(q2, f2):
    reps1 = square_class_reps(q2)
    assert len(reps1) == 8
    texts = sorted(int(e.as_text()) for _, e in reps1)
    assert texts == [1, 2, 3, 5, 6, 7, 10, 14]
    assert any(cls == q2.delta_class for cls, _ in reps1)
    reps2 = square_class_reps(f2)
    assert len(reps2) == 2 ** (2 + 2)
    assert sum(1 for cls, _ in reps2 if cls.val_parity == 0) == 2 ** (2 + 1)
    for cfg, reps in ((q2, reps1), (f2, reps2)):
        keys = {cls for cls, _ in reps}
        assert cfg.one_class in keys and cfg.delta_class in keys
        assert square_class(cfg.elt(2)) in keys
        assert square_class(cfg.elt(2) * cfg.delta) in keys


@pytest.mark.parametrize("f", [1, 2])
def test_square_class_group_law(f, q2, f2):
    cfg = q2 if f == 1 else f2
    for c1, r1 in square_class_reps(cfg):
        for c2, r2 in square_class_reps(cfg):
            assert cfg.class_mul2(c1, c2) == square_class(r1 * r2)


@pytest.mark.parametrize("f", [1, 2])
def test_is_square_iff_identity_class(f, q2, f2):
    cfg = q2 if f == 1 else f2
    for cls, rep in square_class_reps(cfg):
        assert is_square(rep) == (cls == cfg.one_class)
        assert is_square(rep * rep)


@pytest.mark.parametrize("f", [1, 2])
def test_hilbert_algebra(f, q2, f2):
    cfg = q2 if f == 1 else f2
    reps = [r for _, r in square_class_reps(cfg)]
    one = cfg.one()
    for a in reps:
        for b in reps:
            assert hilbert(a, b) == hilbert(b, a)
            assert hilbert(a, (b * b) * b) == hilbert(a, b)
        assert hilbert(a, -a) == 1
        x = one - a
        if not x.is_zero:
            assert hilbert(a, x) == 1
    for a in reps:
        for b in reps:
            for c in reps:
                assert hilbert(a, b * c) == hilbert(a, b) * hilbert(a, c)


@pytest.mark.parametrize("f", [1, 2])
def test_lemma_witness_exists(f, q2, f2):
    # outside the trivial and Delta classes some unit pairs to -1
    cfg = q2 if f == 1 else f2
    units = cfg.unit_classes()
    for c in units:
        if c in (cfg.one_class, cfg.delta_class):
            continue
        assert any(cfg.hilbert_cls(c, eta) == -1 for eta in units)


def test_parse_elt(q2, f2):
    assert parse_elt(q2, "7") == q2.elt(7)
    assert parse_elt(q2, "-5") == q2.elt(-5)
    assert parse_elt(q2, "1/2^2") == q2.elt(1).shift(-2)
    assert parse_elt(q2, 0.5) == q2.elt(1).shift(-1)
    assert parse_elt(q2, 3) == q2.elt(3)
    assert parse_elt(f2, "1,4") == f2.delta
    assert parse_elt(f2, "1,4/2^1") == f2.delta.shift(-1)
    with pytest.raises(FieldError):
        parse_elt(q2, "1/3")
    with pytest.raises(FieldError):
        parse_elt(f2, "1,2,3")
    with pytest.raises(FieldError):
        parse_elt(q2, "x")


def test_element_text_round_trip(f2):
    for text in ("3,5", "0,1", "7,2/2^3", "-3,0"):
        assert parse_elt(f2, parse_elt(f2, text).as_text()) == parse_elt(f2, text)
