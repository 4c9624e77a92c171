import itertools

import pytest

from dyadiclat import (
    IdealExp,
    SpaceError,
    SpaceInv,
    ZERO_IDEAL,
    complement,
    diagonal_realization,
    hilbert,
    is_isotropic,
    orthogonal_sum,
    represents_element,
    represents_ideal,
    represents_space,
    scale_space,
    signed_disc,
    space_from_diagonal,
    square_class_reps,
    witt_decompose,
)
from dyadiclat.spaces import space_from_classes, zero_space


def diag(cfg, *entries):
    return space_from_diagonal([cfg.elt(e) for e in entries], cfg)


def brute_isotropic_mod32(coeffs):
    """Primitive zero of sum a_i x_i^2 mod 2^5 with a Hensel-usable gradient."""
    n = len(coeffs)
    for xs in itertools.product(range(32), repeat=n):
        if all(x % 2 == 0 for x in xs):
            continue
        if sum(a * x * x for a, x in zip(coeffs, xs)) % 32 == 0:
            vals = []
            for a, x in zip(coeffs, xs):
                g = (2 * a * x) % 32
                vals.append((g & -g).bit_length() - 1 if g else 99)
            if min(vals) <= 2:
                return True
    return False


def test_space_from_diagonal(q2):
    v = diag(q2, 1)
    assert (v.dim, v.disc, v.hasse) == (1, q2.one_class, 1)
    h = diag(q2, 1, -1)
    assert (h.dim, h.disc, h.hasse) == (2, q2.neg_class, 1)
    v4 = diag(q2, 1, 1, 1, 1)
    assert (v4.dim, v4.disc, v4.hasse) == (4, q2.one_class, 1)
    with pytest.raises(SpaceError):
        diag(q2, 1, 0)


def test_orthogonal_sum(q2):
    u = diag(q2, 3, 5)
    assert orthogonal_sum(u, zero_space(q2), q2) == u
    h = diag(q2, 1, -1)
    assert orthogonal_sum(h, h, q2) == diag(q2, 1, -1, 1, -1)
    assert orthogonal_sum(diag(q2, 1, 1), diag(q2, 1, 1), q2) == diag(q2, 1, 1, 1, 1)
    # over Q2 the Hasse symbol of H + H picks up (-1,-1) = -1
    assert orthogonal_sum(h, h, q2).hasse == -1


def test_signed_disc(q2):
    assert signed_disc(diag(q2, 1, -1), q2) == q2.one_class
    assert signed_disc(space_from_diagonal([q2.elt(1), -q2.delta], q2), q2) == q2.delta_class
    assert signed_disc(diag(q2, 3), q2) == q2.class_of(q2.elt(3))
    with pytest.raises(SpaceError):
        signed_disc(zero_space(q2), q2)


def test_scale_space(q2):
    v = diag(q2, 3, 5, 7)
    assert scale_space(v, q2.elt(1), q2) == v
    h = diag(q2, 1, -1)
    assert scale_space(h, q2.elt(-1), q2) == h
    assert scale_space(diag(q2, 1, 1, 1), q2.elt(-1), q2) == diag(q2, -1, -1, -1)
    for entries in itertools.product((1, 3, 5, 7, 2), repeat=2):
        v = diag(q2, *entries)
        for c in (3, -2, 10):
            assert scale_space(v, q2.elt(c), q2) == diag(q2, *(c * e for e in entries))
    with pytest.raises(SpaceError):
        scale_space(v, q2.elt(0), q2)


def test_is_isotropic(q2):
    assert is_isotropic(diag(q2, 1, -1), q2)
    assert not is_isotropic(diag(q2, 1, 1, 1), q2)
    assert not is_isotropic(diag(q2, 1), q2)
    assert is_isotropic(diag(q2, 1, 1, 1, 1, 1), q2)
    assert not is_isotropic(diag(q2, 1, 1, 1, 1), q2)  # the quaternion norm form


@pytest.mark.parametrize("dim", [2, 3])
def test_isotropy_vs_brute_force(q2, dim):
    reps = [1, 3, 5, 7, 2, 6, 10, 14]
    for entries in itertools.product(reps, repeat=dim):
        got = is_isotropic(diag(q2, *entries), q2)
        assert got == brute_isotropic_mod32(entries), entries


def test_isotropy_vs_brute_force_quaternary(q2):
    # isotropy is scaling-invariant, so pin the first entry; sample the rest
    reps = [1, 3, 5, 7, 2, 6, 10, 14]
    sweep = list(itertools.product(reps, repeat=3))[::9] + [(1, 1, 1), (1, 2, 2), (7, 14, 2)]
    for tail in sweep:
        entries = (1,) + tail
        got = is_isotropic(diag(q2, *entries), q2)
        assert got == brute_isotropic_mod32(entries), entries


def test_witt_decompose(q2):
    assert witt_decompose(diag(q2, 1, -1), q2) == (1, zero_space(q2))
    w, kernel = witt_decompose(diag(q2, 1, 1, 1, 1), q2)
    assert (w, kernel) == (0, diag(q2, 1, 1, 1, 1))
    w, kernel = witt_decompose(diag(q2, 1, -1, 1), q2)
    assert w == 1 and kernel == diag(q2, 1)
    # dim 5: always isotropic, anisotropic kernel of dim <= 4
    w, kernel = witt_decompose(diag(q2, 1, 1, 1, 1, 1), q2)
    assert w >= 1 and not is_isotropic(kernel, q2)


def test_represents_element(q2):
    h = diag(q2, 1, -1)
    assert represents_element(h, q2.elt(2), q2)  # isotropic binary is universal
    v = diag(q2, 1, 1, 1)
    assert represents_element(v, q2.elt(2), q2)
    assert not represents_element(v, q2.elt(7), q2)
    # independent check: sums of three squares mod 8 miss exactly 7
    sums = {(a * a + b * b + c * c) % 8 for a in range(8) for b in range(8) for c in range(8)}
    assert 7 not in sums and 5 in sums
    with pytest.raises(SpaceError):
        represents_element(v, q2.elt(0), q2)


def test_represents_ideal(q2):
    for entries in itertools.product((1, 3, 2), repeat=3):
        v = diag(q2, *entries)
        for e in (0, 1, -3, 4):
            assert represents_ideal(v, IdealExp(e), q2)
    vd = space_from_diagonal([q2.elt(1), -q2.delta], q2)
    assert not represents_ideal(vd, IdealExp(1), q2)
    assert represents_ideal(vd, IdealExp(0), q2)
    assert represents_ideal(vd, ZERO_IDEAL, q2)
    assert represents_ideal(zero_space(q2), ZERO_IDEAL, q2)
    assert not represents_ideal(zero_space(q2), IdealExp(0), q2)
    # binary with unit signed discriminant outside the Delta class: universal
    for cls, rep in square_class_reps(q2):
        for cls2, rep2 in square_class_reps(q2):
            v = space_from_diagonal([rep, rep2], q2)
            sd = signed_disc(v, q2)
            if sd.val_parity == 0 and sd != q2.delta_class:
                for e in (0, 1):
                    assert represents_ideal(v, IdealExp(e), q2), (rep, rep2, e)


def test_represents_space(q2):
    v = diag(q2, 1, 3, 5)
    assert represents_space(v, v, q2)
    assert represents_space(diag(q2, 7), diag(q2, 1, 1, 1, 7), q2)
    # dim difference >= 3 is always enough
    for entries in itertools.product((1, 3, 2), repeat=1):
        u = diag(q2, *entries)
        assert represents_space(u, diag(q2, 1, 1, 1, 1), q2)
    h2 = diag(q2, 1, -1, 1, -1)
    for a, b in itertools.product((1, 3, 5, 7, 2, 6, 10, 14), repeat=2):
        assert represents_space(diag(q2, a, b), h2, q2)
    # monotone under right summands
    u = diag(q2, 3, 5)
    v = diag(q2, 3, 5)
    assert represents_space(u, orthogonal_sum(v, diag(q2, 2), q2), q2)
    assert not represents_space(diag(q2, 1, 1, 1), diag(q2, 1, 1), q2)


def test_complement(q2):
    v = diag(q2, 1, 3, 14)
    assert complement(v, v, q2) == zero_space(q2)
    h = diag(q2, 1, -1)
    assert complement(h, orthogonal_sum(h, h, q2), q2) == h
    assert complement(diag(q2, 1), diag(q2, 1, 1, 1), q2) == diag(q2, 1, 1)
    with pytest.raises(SpaceError):
        complement(diag(q2, 1, 1, 1), diag(q2, 1, 1), q2)
    # complement + orthogonal_sum reproduces the ambient invariants
    for u_e in itertools.product((1, 3, 2), repeat=1):
        for v_e in itertools.product((1, 3, 5, 2), repeat=3):
            u, v = diag(q2, *u_e), diag(q2, *v_e)
            if represents_space(u, v, q2):
                assert orthogonal_sum(u, complement(u, v, q2), q2) == v


@pytest.mark.parametrize("f", [1, 2])
def test_diagonal_realization_round_trip(f, q2, f2):
    cfg = q2 if f == 1 else f2
    for dim in (4, 5) if f == 1 else ():
        for disc in cfg.square_classes:
            for hasse in (1, -1):
                v = SpaceInv(dim, disc, hasse)
                assert space_from_classes(diagonal_realization(v, cfg), cfg) == v
    realizable = unrealizable = 0
    for dim in (1, 2, 3):
        for disc in cfg.square_classes:
            for hasse in (1, -1):
                v = SpaceInv(dim, disc, hasse)
                try:
                    entries = diagonal_realization(v, cfg)
                except SpaceError:
                    unrealizable += 1
                    assert dim == 1 or (dim == 2 and disc == cfg.neg_class and hasse == -1)
                    continue
                realizable += 1
                assert space_from_classes(entries, cfg) == v
    # dim 1 forbids hasse = -1; dim 2 forbids (disc, hasse) = (-1, -hasse(H))
    n = 2 ** (f + 2)
    assert unrealizable == n + 1
    assert realizable == 3 * 2 * n - unrealizable


def test_hasse_convention_matches_hilbert_products(q2):
    # epsilon = prod_{i<j} (a_i, a_j) in the strict upper triangle convention
    for entries in itertools.product((1, 3, 5, 7, 2, 6), repeat=3):
        v = diag(q2, *entries)
        eps = 1
        for i in range(3):
            for j in range(i + 1, 3):
                eps *= hilbert(q2.elt(entries[i]), q2.elt(entries[j]))
        assert v.hasse == eps
