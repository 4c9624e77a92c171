"""Acceptance suite.

Each test implements one acceptance criterion end to end and prints a
one-line PASS summary (run pytest with -s to see them).  The sweeps are
exact, so every criterion demands zero disagreements / zero violations;
the only tolerance-style bound is the >= 90% decisiveness of the
brute-force oracle in criterion 7.
"""

import itertools
import random

from dyadiclat import (
    IdealExp,
    LatticeError,
    brute_force_represents,
    crosscheck,
    enumerate_classic_basic,
    enumerate_dominant,
    gram_from_jordan,
    hilbert,
    is_classic,
    is_integral,
    jordan_split,
    lattice_from_jordan,
    lower_type,
    proper_component,
    represents_ideal,
    represents_lattice,
    signed_disc,
    space_from_diagonal,
    square_class_reps,
)
from dyadiclat.represent import NOT_REPRESENTED, REPRESENTED, UNKNOWN
from dyadiclat.spaces import is_isotropic, represents_element_cls
from dyadiclat.universal import iter_family, random_lattice

FAMILY = dict(max_components=3, scale_min=-1, scale_max=3, max_dim=4, max_total_dim=5)


def report(n, text):
    print(f"\nACCEPTANCE PASS: criterion {n} - {text}")


# ----------------------------------------------------------------------
# 1. k = 1 equivalence (Thm 1.2 / Cor 4.10)
# ----------------------------------------------------------------------
def test_criterion_1_k1_equivalence(q2):
    rep = crosscheck(q2, 1, False, **FAMILY)
    assert rep["disagreements"] == [] and rep["agree"] == rep["total"]
    repc = crosscheck(q2, 1, True, **FAMILY)
    assert repc["disagreements"] == [] and repc["agree"] == repc["total"]
    report(1, f"k=1: {rep['total']} integral + {repc['total']} classic lattices, 0 disagreements")


# ----------------------------------------------------------------------
# 2. k = 2 and k = 3 equivalence (Thms 1.3, 1.4, 6.10, 6.16)
# ----------------------------------------------------------------------
def test_criterion_2_k2_equivalence(q2):
    fam = dict(FAMILY, max_total_dim=7)
    rep = crosscheck(q2, 2, False, **fam)
    assert rep["disagreements"] == [] and rep["agree"] == rep["total"]
    repc = crosscheck(q2, 2, True, **fam)
    assert repc["disagreements"] == [] and repc["agree"] == repc["total"]
    report(2, f"k=2: {rep['total']} + {repc['total']} classic, 0 disagreements")


def test_criterion_2_k3_equivalence(q2):
    fam = dict(FAMILY, max_total_dim=8)
    rep = crosscheck(q2, 3, False, **fam)
    assert rep["disagreements"] == [] and rep["agree"] == rep["total"]
    repc = crosscheck(q2, 3, True, **fam)
    assert repc["disagreements"] == [] and repc["agree"] == repc["total"]
    report(2, f"k=3: {rep['total']} + {repc['total']} classic, 0 disagreements")


# ----------------------------------------------------------------------
# 3. f = 2 smoke equivalence
# ----------------------------------------------------------------------
def test_criterion_3_f2_smoke(f2):
    for k in (1, 2):
        rep = crosscheck(f2, k, False, sample=500, seed=0)
        assert rep["total"] == 500 and rep["disagreements"] == []
    report(3, "f=2: 500 random lattices for k=1 and k=2, 0 disagreements")


# ----------------------------------------------------------------------
# 4. Lower-type characterizations (Props 5.2, 6.1, 5.10, 6.2)
# ----------------------------------------------------------------------
def _all_lower(tests, L, cfg):
    return all(bool(lower_type(ell, L, cfg)) for ell in tests)


def _sn(L, r, exp):
    c = L.components[r - 1] if r <= len(L.components) else None
    return c is not None and c.proper and c.scale_exp == exp


def test_criterion_4_lower_type_characterizations(q2):
    checked = {"even": 0, "odd": 0, "classic-even": 0, "classic-odd": 0}
    doms = {k: enumerate_dominant(k, q2) for k in (2, 3, 4)}
    basics = {k: enumerate_classic_basic(k, q2) for k in (2, 3)}
    for L in iter_family(q2, **FAMILY):
        if not is_integral(L):
            continue
        L1 = L.components[0]
        dim2 = L.components[1].dim if len(L.components) > 1 else 0
        # k even: all dominant k-dim lower type  iff  L1 improper of scale
        # 2^-1, dim >= k, and (dim = k -> 2O inside n(L2)).  The side
        # condition must read on the norm: an improper 2-modular L2 has
        # scale 2O but norm 4O, and its lattice fails against the test
        # lattice <e> + <2e'> at clause (4)(b), as the congruence oracle
        # confirms.
        for k in (2, 4):
            lhs = _all_lower(doms[k], L, q2)
            rhs = (
                L1.scale_exp == -1
                and L1.norm_exp == 0
                and L1.dim >= k
                and (L1.dim != k or (len(L.components) > 1 and L.components[1].norm_exp <= 1))
            )
            assert lhs == rhs, ("lower-type characterization, k even", k, L)
            checked["even"] += 1
        # k odd (k = 3): dominant side
        lhs = _all_lower(doms[3], L, q2)
        rhs = (
            L1.scale_exp == -1
            and L1.norm_exp == 0
            and (
                L1.dim >= 4
                or (
                    L1.dim == 2
                    and _sn(L, 2, 0)
                    and (dim2 >= 2 or _sn(L, 3, 1))
                )
            )
        )
        assert lhs == rhs, ("lower-type characterization, k odd", L)
        checked["odd"] += 1
        if not is_classic(L):
            continue
        # classic, k even: L1 proper unimodular of dim >= k + 1
        lhs = _all_lower(basics[2], L, q2)
        rhs = _sn(L, 1, 0) and L1.dim >= 3
        assert lhs == rhs, ("lower-type characterization, classic k even", L)
        checked["classic-even"] += 1
        # classic, k odd: L1 proper unimodular dim >= k, 2-modular follow-up at dim k
        lhs = _all_lower(basics[3], L, q2)
        rhs = _sn(L, 1, 0) and L1.dim >= 3 and (L1.dim != 3 or _sn(L, 2, 1))
        assert lhs == rhs, ("lower-type characterization, classic k odd", L)
        checked["classic-odd"] += 1
    assert all(v > 1000 for v in checked.values())
    report(4, f"lower-type biconditionals: {checked} instances, 0 exceptions")


# ----------------------------------------------------------------------
# 5. Section-2 property suites
# ----------------------------------------------------------------------
def _unit_reps(cfg):
    return [rep for cls, rep in square_class_reps(cfg) if cls.val_parity == 0]


def test_criterion_5_value_properties(q2, f2):
    total = 0
    for cfg in (q2, f2):
        reps = [rep for _, rep in square_class_reps(cfg)]
        units = _unit_reps(cfg)
        two = cfg.elt(2)
        # dim >= 3 represents every fractional ideal
        for triple in itertools.product(reps, repeat=3):
            v = space_from_diagonal(list(triple), cfg)
            assert represents_ideal(v, IdealExp(0), cfg)
            assert represents_ideal(v, IdealExp(1), cfg)
            total += 1
        # binary value sets: Q(V) covers every class iff V is isotropic
        for pair in itertools.product(reps, repeat=2):
            v = space_from_diagonal(list(pair), cfg)
            covers = all(represents_element_cls(v, c, cfg) for c in cfg.square_classes)
            assert covers == is_isotropic(v, cfg)
            total += 1
        # anisotropic <1, e1, e2>: represents 2*units, misses -e1*e2
        for e1, e2 in itertools.product(units, repeat=2):
            v = space_from_diagonal([cfg.one(), e1, e2], cfg)
            if is_isotropic(v, cfg):
                continue
            for u in units:
                assert represents_element_cls(v, cfg.class_of(two * u), cfg)
            assert not represents_element_cls(v, cfg.class_of(-(e1 * e2)), cfg)
            total += 1
        # anisotropic <1, e1, 2 e2>: represents units, misses -2*e1*e2
        for e1, e2 in itertools.product(units, repeat=2):
            v = space_from_diagonal([cfg.one(), e1, two * e2], cfg)
            if is_isotropic(v, cfg):
                continue
            for u in units:
                assert represents_element_cls(v, cfg.class_of(u), cfg)
            assert not represents_element_cls(v, cfg.class_of(-(two * e1 * e2)), cfg)
            total += 1
        # ternary anisotropic: represents gamma or gamma * Delta for every gamma
        for triple in itertools.product(reps, repeat=3):
            v = space_from_diagonal(list(triple), cfg)
            if is_isotropic(v, cfg):
                continue
            for gamma in cfg.square_classes:
                gd = cfg.class_mul2(gamma, cfg.delta_class)
                assert represents_element_cls(v, gamma, cfg) or represents_element_cls(v, gd, cfg)
            total += 1
        # witnesses for c outside the trivial and Delta classes: a split ramified
        # ternary, an anisotropic ramified ternary, and a unit eta that keeps
        # both <1,-c,-eta> and <Delta,-c,-eta> anisotropic
        for c_cls in cfg.unit_classes():
            if c_cls in (cfg.one_class, cfg.delta_class):
                continue
            c = cfg.class_reps[c_cls.index]
            one, delta = cfg.one(), cfg.delta
            assert any(
                is_isotropic(space_from_diagonal([one, -c, -(two * t)], cfg), cfg) for t in units
            )
            assert any(
                not is_isotropic(space_from_diagonal([one, -c, -(two * e)], cfg), cfg) for e in units
            )
            assert any(
                not is_isotropic(space_from_diagonal([one, -c, -eta], cfg), cfg)
                and not is_isotropic(space_from_diagonal([delta, -c, -eta], cfg), cfg)
                for eta in units
            )
            total += 1
        # binary with unit signed discriminant outside the Delta class: universal
        for pair in itertools.product(reps, repeat=2):
            v = space_from_diagonal(list(pair), cfg)
            sd = signed_disc(v, cfg)
            if sd.val_parity == 0 and sd != cfg.delta_class:
                assert represents_ideal(v, IdealExp(0), cfg)
                assert represents_ideal(v, IdealExp(1), cfg)
                total += 1
    report(5, f"section-2 value properties over f in {{1,2}}: {total} instances, all hold")


# ----------------------------------------------------------------------
# 6. Hilbert symbol algebra + brute-force isotropy agreement
# ----------------------------------------------------------------------
def _brute_isotropic_mod32(coeffs):
    for xs in itertools.product(range(32), repeat=len(coeffs)):
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


def test_criterion_6_hilbert_algebra(q2, f2):
    pairs = 0
    for cfg in (q2, f2):
        reps = [rep for _, rep in square_class_reps(cfg)]
        one = cfg.one()
        for a in reps:
            assert hilbert(a, -a) == 1
            x = one - a
            if not x.is_zero:
                assert hilbert(a, x) == 1
            for b in reps:
                assert hilbert(a, b) == hilbert(b, a)
                pairs += 1
        for a, b, c in itertools.product(reps, repeat=3):
            assert hilbert(a, b * c) == hilbert(a, b) * hilbert(a, c)
    ints = [int(rep.as_text()) for _, rep in square_class_reps(q2)]
    checked = 0
    for a, b in itertools.product(ints, repeat=2):
        want = _brute_isotropic_mod32((a, b, -1))
        assert (hilbert(q2.elt(a), q2.elt(b)) == 1) == want, (a, b)
        checked += 1
    report(6, f"hilbert algebra on {pairs} pairs; brute-force agreement on {checked} f=1 ternaries")


# ----------------------------------------------------------------------
# 7. Integral-level spot checks and oracle consistency
# ----------------------------------------------------------------------
def test_criterion_7_brute_force_consistency(q2):
    E = q2.elt

    def lat1(u):
        return lattice_from_jordan([proper_component(0, [q2.class_of(E(u))], q2)], q2)

    L111 = lattice_from_jordan([proper_component(0, [q2.one_class] * 3, q2)], q2)
    gL = gram_from_jordan(L111, q2)
    assert represents_lattice(lat1(7), L111, q2).value == NOT_REPRESENTED
    assert brute_force_represents(gram_from_jordan(lat1(7), q2), gL, q2).value == NOT_REPRESENTED
    assert represents_lattice(lat1(5), L111, q2).value == REPRESENTED
    assert brute_force_represents(gram_from_jordan(lat1(5), q2), gL, q2).value == REPRESENTED

    rng = random.Random(12345)

    def rand_entry(diag):
        if not diag and rng.random() < 0.35:
            return E(0)
        v = rng.randint(0, 3)
        u = rng.choice([1, 3, 5, 7])
        return E(u * (1 << v) * (1 if diag or rng.random() < 0.7 else -1))

    def rand_gram(n):
        while True:
            g = [[E(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    e = rand_entry(i == j)
                    g[i][j] = g[j][i] = e
            try:
                return g, jordan_split(g, q2)
            except LatticeError:
                continue

    decisive = contradictions = 0
    for _ in range(100):
        gl, ll = rand_gram(rng.randint(1, 2))
        gL2, lL = rand_gram(rng.randint(2, 4))
        thm = represents_lattice(ll, lL, q2)
        bf = brute_force_represents(gl, gL2, q2, modulus_exp=9)
        if bf.value == UNKNOWN:
            continue
        decisive += 1
        if (bf.value == REPRESENTED) != bool(thm):
            contradictions += 1
    assert contradictions == 0
    assert decisive >= 90
    report(7, f"brute force vs criterion: 100 pairs, {decisive} decisive, 0 contradictions")


# ----------------------------------------------------------------------
# 8. Jordan round trip
# ----------------------------------------------------------------------
def test_criterion_8_jordan_round_trip(q2):
    rng = random.Random(2024)
    for _ in range(1000):
        lat = random_lattice(q2, rng, max_components=4, scale_min=-2, scale_max=4, max_dim=4)
        back = jordan_split(gram_from_jordan(lat, q2), q2)
        inv = lambda l: [(c.scale_exp, c.dim, c.proper, c.span(q2)) for c in l.components]
        assert inv(lat) == inv(back)
    report(8, "1000 random Jordan lattices reassembled and re-split, invariants identical")
