"""Classifiers and oracles for k-universality over unramified dyadic fields.

``classify_k_universal`` / ``classify_classic_k_universal`` evaluate the
closed-form clause trees (dispatching on k = 1, k even, k odd >= 3);
``oracle_k_universal`` decides the same property from first principles by
sweeping the finite set of dominant (resp. classic basic) test lattices
of dimension k through the exact representability criterion.  The two
paths are independent and ``crosscheck`` compares them over lattice
families.

Test lattices follow the normal form I_{-1} + I_0 + P_0 + P_1 (+ I_1 in
the classic case): improper pieces at scales 2^-1, 1 (and 2) with a type
bit each, proper pieces at scales 1 and 2 with unit-class diagonals.
Each shape is materialized as a Gram matrix and re-split, so equal-scale
parts end up merged into honest Jordan components.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .field import FieldCfg
from .lattices import (
    JordanLattice,
    gram_from_components,
    improper_component,
    is_classic,
    is_integral,
    jordan_split,
    lattice_to_json,
    proper_component,
)
from .represent import represents_lattice
from .spaces import is_isotropic, orthogonal_sum, signed_disc


class UniversalityError(ValueError):
    """Precondition failure: non-integral / non-classic lattice or bad k."""


@dataclass(frozen=True)
class ClassifyVerdict:
    value: bool
    clause: str
    witness: JordanLattice | None = None

    def __bool__(self) -> bool:
        return self.value


def _comp(L: JordanLattice, r: int):
    """r-th Jordan component (1-based), or None."""
    return L.components[r - 1] if r <= len(L.components) else None


def _is_sn(comp, exp: int) -> bool:
    """scale(comp) = norm(comp) = 2^exp O, i.e. proper of scale exp."""
    return comp is not None and comp.proper and comp.scale_exp == exp


def _norm_le(comp, exp: int) -> bool:
    """2^exp O_F inside norm(comp); requires the component to exist."""
    return comp is not None and comp.norm_exp <= exp


# ----------------------------------------------------------------------
# Theorem clause trees
# ----------------------------------------------------------------------
def classify_universal(L: JordanLattice, cfg: FieldCfg) -> ClassifyVerdict:
    """Universality (k = 1) by the closed-form classification."""
    if not is_integral(L):
        raise UniversalityError("classify_universal needs an integral lattice")
    L1, L2, L3, L4 = _comp(L, 1), _comp(L, 2), _comp(L, 3), _comp(L, 4)
    if L1 is None or L1.norm_exp != 0:
        return ClassifyVerdict(False, "gate: n(L1) != O_F")
    d1 = L1.dim
    if d1 >= 4:
        return ClassifyVerdict(True, "Thm1.2(1)")
    if d1 == 3:
        if is_isotropic(L1.span(cfg), cfg):
            return ClassifyVerdict(True, "Thm1.2(2)")
        if _norm_le(L2, 2):
            return ClassifyVerdict(True, "Thm1.2(2)")
        return ClassifyVerdict(False, "gate: Thm1.2(2)")
    if d1 == 2:
        if L1.scale_exp == 0:
            if _is_sn(L2, 1):
                if L2.dim >= 2:
                    return ClassifyVerdict(True, "Thm1.2 3(a)(i)")
                if is_isotropic(orthogonal_sum(L1.span(cfg), L2.span(cfg), cfg), cfg):
                    return ClassifyVerdict(True, "Thm1.2 3(a)(ii)")
                if _norm_le(L3, 3):
                    return ClassifyVerdict(True, "Thm1.2 3(a)(iii)")
            return ClassifyVerdict(False, "gate: Thm1.2 3(a)")
        # scale(L1) = 2^-1 O_F, L1 improper
        if is_isotropic(L1.span(cfg), cfg):
            return ClassifyVerdict(True, "Thm1.2 3(b)(i)")
        if L2 is not None and L2.dim >= 2 and L2.norm_exp <= 1:
            return ClassifyVerdict(True, "Thm1.2 3(b)(ii)")
        if L2 is not None and L2.dim == 1 and _is_sn(L2, 0):
            return ClassifyVerdict(True, "Thm1.2 3(b)(iii)")
        if L2 is not None and L2.dim == 1 and _is_sn(L2, 1) and _norm_le(L3, 3):
            return ClassifyVerdict(True, "Thm1.2 3(b)(iv)")
        return ClassifyVerdict(False, "gate: Thm1.2 3(b)")
    # d1 == 1
    if _is_sn(L2, 1):
        if L2.dim >= 3:
            return ClassifyVerdict(True, "Thm1.2 4(a)")
        if L2.dim == 2 and _is_sn(L3, 2):
            return ClassifyVerdict(True, "Thm1.2 4(b)")
        if L2.dim == 1 and L3 is not None and L3.dim >= 2 and _is_sn(L3, 2):
            return ClassifyVerdict(True, "Thm1.2 4(c)")
        if (
            L2.dim == 1
            and L3 is not None
            and L3.dim == 1
            and _is_sn(L3, 2)
            and _is_sn(L4, 3)
        ):
            return ClassifyVerdict(True, "Thm1.2 4(d)")
    return ClassifyVerdict(False, "gate: Thm1.2(4)")


def classify_classic_universal(L: JordanLattice, cfg: FieldCfg) -> ClassifyVerdict:
    """Classic universality (k = 1)."""
    if not is_classic(L):
        raise UniversalityError("classify_classic_universal needs a classic lattice")
    L1, L2, L3, L4 = _comp(L, 1), _comp(L, 2), _comp(L, 3), _comp(L, 4)
    if not _is_sn(L1, 0):
        return ClassifyVerdict(False, "gate: s(L1) = n(L1) = O_F fails")
    d1 = L1.dim
    if d1 >= 4:
        return ClassifyVerdict(True, "Cor4.10(1)")
    if d1 == 3:
        if is_isotropic(L1.span(cfg), cfg) or _norm_le(L2, 2):
            return ClassifyVerdict(True, "Cor4.10(2)")
        return ClassifyVerdict(False, "gate: Cor4.10(2)")
    if d1 == 2:
        if _is_sn(L2, 1):
            if L2.dim >= 2:
                return ClassifyVerdict(True, "Cor4.10 3(a)")
            if is_isotropic(orthogonal_sum(L1.span(cfg), L2.span(cfg), cfg), cfg):
                return ClassifyVerdict(True, "Cor4.10 3(b)")
            if _norm_le(L3, 3):
                return ClassifyVerdict(True, "Cor4.10 3(c)")
        return ClassifyVerdict(False, "gate: Cor4.10(3)")
    if _is_sn(L2, 1):
        if L2.dim >= 3:
            return ClassifyVerdict(True, "Cor4.10 4(a)")
        if L2.dim == 2 and _is_sn(L3, 2):
            return ClassifyVerdict(True, "Cor4.10 4(b)")
        if L2.dim == 1 and L3 is not None and L3.dim >= 2 and _is_sn(L3, 2):
            return ClassifyVerdict(True, "Cor4.10 4(c)")
        if (
            L2.dim == 1
            and L3 is not None
            and L3.dim == 1
            and _is_sn(L3, 2)
            and _is_sn(L4, 3)
        ):
            return ClassifyVerdict(True, "Cor4.10 4(d)")
    return ClassifyVerdict(False, "gate: Cor4.10(4)")


def _classify_k_even(L: JordanLattice, k: int, cfg: FieldCfg) -> ClassifyVerdict:
    L1, L2, L3, L4 = _comp(L, 1), _comp(L, 2), _comp(L, 3), _comp(L, 4)
    if L1 is None or L1.norm_exp != 0 or L1.scale_exp != -1:
        return ClassifyVerdict(False, "gate: n(L1) = O_F, s(L1) = 2^-1 O_F fails")
    d1 = L1.dim
    if d1 >= k + 4:
        return ClassifyVerdict(True, "Thm1.3(1)")
    if d1 == k + 2:
        dpm = signed_disc(L1.span(cfg), cfg)
        if dpm == cfg.one_class and (k == 2 or _norm_le(L2, 1)):
            return ClassifyVerdict(True, "Thm1.3 2(a)")
        if dpm == cfg.delta_class and _norm_le(L2, 1):
            return ClassifyVerdict(True, "Thm1.3 2(b)")
        return ClassifyVerdict(False, "gate: Thm1.3(2)")
    if d1 == k:
        if L2 is not None and L2.dim >= 2 and _is_sn(L2, 0):
            if L2.dim >= 3:
                return ClassifyVerdict(True, "Thm1.3 3(a)")
            if _is_sn(L3, 1):
                return ClassifyVerdict(True, "Thm1.3 3(b)")
            dpm2 = signed_disc(L2.span(cfg), cfg)
            if (
                dpm2 not in (cfg.one_class, cfg.delta_class)
                and L3 is not None
                and L3.norm_exp == 2
            ):
                return ClassifyVerdict(True, "Thm1.3 3(c)")
            return ClassifyVerdict(False, "gate: Thm1.3(3)")
        if L2 is not None and L2.dim == 1 and _is_sn(L2, 0) and _is_sn(L3, 1):
            if L3.dim >= 2:
                return ClassifyVerdict(True, "Thm1.3 4(a)")
            if L3.dim == 1 and _norm_le(L4, 3):
                return ClassifyVerdict(True, "Thm1.3 4(b)")
        return ClassifyVerdict(False, "gate: Thm1.3(4)")
    return ClassifyVerdict(False, "gate: Thm1.3 dim(L1)")


def _classify_classic_k_even(L: JordanLattice, k: int, cfg: FieldCfg) -> ClassifyVerdict:
    L1, L2, L3 = _comp(L, 1), _comp(L, 2), _comp(L, 3)
    if not _is_sn(L1, 0):
        return ClassifyVerdict(False, "gate: s(L1) = n(L1) = O_F fails")
    d1 = L1.dim
    if d1 >= k + 3:
        return ClassifyVerdict(True, "Thm1.4(1)")
    if d1 == k + 2:
        if _is_sn(L2, 1):
            return ClassifyVerdict(True, "Thm1.4(2)")
        dpm = signed_disc(L1.span(cfg), cfg)
        if dpm not in (cfg.one_class, cfg.delta_class) and L2 is not None and L2.norm_exp == 2:
            return ClassifyVerdict(True, "Thm1.4(3)")
        return ClassifyVerdict(False, "gate: Thm1.4(2,3)")
    if d1 == k + 1:
        if L2 is not None and L2.dim >= 2 and _is_sn(L2, 1):
            return ClassifyVerdict(True, "Thm1.4(4)")
        if L2 is not None and L2.dim == 1 and _is_sn(L2, 1) and _norm_le(L3, 3):
            return ClassifyVerdict(True, "Thm1.4(5)")
        return ClassifyVerdict(False, "gate: Thm1.4(4,5)")
    return ClassifyVerdict(False, "gate: Thm1.4 dim(L1)")


def _classify_k_odd(L: JordanLattice, k: int, cfg: FieldCfg) -> ClassifyVerdict:
    L1, L2, L3, L4, L5 = (_comp(L, r) for r in range(1, 6))
    if L1 is None or L1.norm_exp != 0 or L1.scale_exp != -1:
        return ClassifyVerdict(False, "gate: n(L1) = O_F, s(L1) = 2^-1 O_F fails")
    d1 = L1.dim
    if d1 >= k + 3:
        return ClassifyVerdict(True, "Thm6.10(1)")
    if d1 == k + 1:
        if L2 is not None and L2.dim >= 2 and L2.norm_exp <= 1:
            return ClassifyVerdict(True, "Thm6.10 2(a)")
        if L2 is not None and L2.dim == 1 and _is_sn(L2, 0) and _norm_le(L3, 2):
            return ClassifyVerdict(True, "Thm6.10 2(b)")
        if L2 is not None and L2.dim == 1 and _is_sn(L2, 1) and _norm_le(L3, 3):
            return ClassifyVerdict(True, "Thm6.10 2(c)")
        return ClassifyVerdict(False, "gate: Thm6.10(2)")
    if d1 == k - 1:
        if L2 is not None and L2.dim >= 2 and _is_sn(L2, 0):
            if L2.dim >= 4:
                return ClassifyVerdict(True, "Thm6.10 3(a)")
            if L2.dim == 3 and _norm_le(L3, 2):
                return ClassifyVerdict(True, "Thm6.10 3(b)")
            if L2.dim == 2 and L3 is not None and L3.dim >= 2 and _is_sn(L3, 1):
                return ClassifyVerdict(True, "Thm6.10 3(c)")
            if (
                L2.dim == 2
                and L3 is not None
                and L3.dim == 1
                and _is_sn(L3, 1)
                and _norm_le(L4, 3)
            ):
                return ClassifyVerdict(True, "Thm6.10 3(d)")
            return ClassifyVerdict(False, "gate: Thm6.10(3)")
        if L2 is not None and L2.dim == 1 and _is_sn(L2, 0) and _is_sn(L3, 1):
            if L3.dim >= 3:
                return ClassifyVerdict(True, "Thm6.10 4(a)")
            if L3.dim == 2 and _is_sn(L4, 2):
                return ClassifyVerdict(True, "Thm6.10 4(b)")
            if L3.dim == 1 and L4 is not None and L4.dim >= 2 and _is_sn(L4, 2):
                return ClassifyVerdict(True, "Thm6.10 4(c)")
            if (
                L3.dim == 1
                and L4 is not None
                and L4.dim == 1
                and _is_sn(L4, 2)
                and _is_sn(L5, 3)
            ):
                return ClassifyVerdict(True, "Thm6.10 4(d)")
        return ClassifyVerdict(False, "gate: Thm6.10(4)")
    return ClassifyVerdict(False, "gate: Thm6.10 dim(L1)")


def _classify_classic_k_odd(L: JordanLattice, k: int, cfg: FieldCfg) -> ClassifyVerdict:
    L1, L2, L3, L4 = _comp(L, 1), _comp(L, 2), _comp(L, 3), _comp(L, 4)
    if not _is_sn(L1, 0):
        return ClassifyVerdict(False, "gate: s(L1) = n(L1) = O_F fails")
    d1 = L1.dim
    if d1 >= k + 3:
        return ClassifyVerdict(True, "Thm6.16(1)")
    if d1 == k + 2:
        if _norm_le(L2, 2):
            return ClassifyVerdict(True, "Thm6.16(2)")
        return ClassifyVerdict(False, "gate: Thm6.16(2)")
    if d1 == k + 1:
        if _is_sn(L2, 1):
            if L2.dim >= 2:
                return ClassifyVerdict(True, "Thm6.16 3(a)")
            if _norm_le(L3, 3):
                return ClassifyVerdict(True, "Thm6.16 3(b)")
        return ClassifyVerdict(False, "gate: Thm6.16(3)")
    if d1 == k:
        if _is_sn(L2, 1):
            if L2.dim >= 3:
                return ClassifyVerdict(True, "Thm6.16 4(a)")
            if L2.dim == 2 and _is_sn(L3, 2):
                return ClassifyVerdict(True, "Thm6.16 4(b)")
            if L2.dim == 1 and L3 is not None and L3.dim >= 2 and _is_sn(L3, 2):
                return ClassifyVerdict(True, "Thm6.16 4(c)")
            if (
                L2.dim == 1
                and L3 is not None
                and L3.dim == 1
                and _is_sn(L3, 2)
                and _is_sn(L4, 3)
            ):
                return ClassifyVerdict(True, "Thm6.16 4(d)")
        return ClassifyVerdict(False, "gate: Thm6.16(4)")
    return ClassifyVerdict(False, "gate: Thm6.16 dim(L1)")


def classify_k_universal(L: JordanLattice, k: int, cfg: FieldCfg) -> ClassifyVerdict:
    if k < 1:
        raise UniversalityError("k must be >= 1")
    if not is_integral(L):
        raise UniversalityError("classify_k_universal needs an integral lattice")
    if k == 1:
        return classify_universal(L, cfg)
    if k % 2 == 0:
        return _classify_k_even(L, k, cfg)
    return _classify_k_odd(L, k, cfg)


def classify_classic_k_universal(L: JordanLattice, k: int, cfg: FieldCfg) -> ClassifyVerdict:
    if k < 1:
        raise UniversalityError("k must be >= 1")
    if not is_classic(L):
        raise UniversalityError("classify_classic_k_universal needs a classic lattice")
    if k == 1:
        return classify_classic_universal(L, cfg)
    if k % 2 == 0:
        return _classify_classic_k_even(L, k, cfg)
    return _classify_classic_k_odd(L, k, cfg)


# ----------------------------------------------------------------------
# Test-lattice enumerators
# ----------------------------------------------------------------------
def _improper_shapes(scale: int, dim: int):
    if dim % 2:
        return
    if dim:
        for bit in (False, True):
            yield improper_component(scale, dim // 2, bit)


def _proper_shapes(scale: int, dim: int, cfg: FieldCfg):
    if dim:
        for diag in itertools.combinations_with_replacement(cfg.unit_classes(), dim):
            yield proper_component(scale, diag, cfg)


def _basic_shapes(k: int, cfg: FieldCfg, slots):
    """All basic shapes over the given (scale, improper?) slots, total dim k."""
    def rec(idx, remaining, acc):
        if idx == len(slots):
            if remaining == 0:
                yield tuple(acc)
            return
        scale, improper = slots[idx]
        step = 2 if improper else 1
        for d in range(0, remaining + 1, step):
            if d == 0:
                yield from rec(idx + 1, remaining, acc)
                continue
            gen = _improper_shapes(scale, d) if improper else _proper_shapes(scale, d, cfg)
            for comp in gen:
                yield from rec(idx + 1, remaining - d, acc + [comp])

    yield from rec(0, k, [])


def _canonicalize_shapes(shapes, cfg: FieldCfg):
    out, seen = [], set()
    for shape in shapes:
        lat = jordan_split(gram_from_components(shape, cfg), cfg)
        if lat.key() not in seen:
            seen.add(lat.key())
            out.append(lat)
    # Shapes concentrated at low scales impose the strongest lower-type
    # demands; putting them first lets the oracle refute quickly.  Among
    # equal low-scale dims, improper shapes are the more demanding ones.
    def hardness(l):
        improper0 = sum(c.dim for c in l.components if not c.proper and c.scale_exp <= 0)
        return (-l.dim_le(-1), -l.dim_le(0), -improper0, l.key())

    out.sort(key=hardness)
    return out


def enumerate_dominant(k: int, cfg: FieldCfg) -> list:
    """All dominant test lattices of dimension k (I_-1 + I_0 + P_0 + P_1)."""
    if k < 1:
        raise UniversalityError("k must be >= 1")
    key = ("dominant", k)
    if key not in cfg.enum_cache:
        slots = [(-1, True), (0, True), (0, False), (1, False)]
        cfg.enum_cache[key] = _canonicalize_shapes(_basic_shapes(k, cfg, slots), cfg)
    return cfg.enum_cache[key]


def enumerate_classic_basic(k: int, cfg: FieldCfg) -> list:
    """All classic basic test lattices of dimension k (I_0 + P_0 + P_1 + I_1)."""
    if k < 1:
        raise UniversalityError("k must be >= 1")
    key = ("classic", k)
    if key not in cfg.enum_cache:
        slots = [(0, True), (0, False), (1, False), (1, True)]
        cfg.enum_cache[key] = _canonicalize_shapes(_basic_shapes(k, cfg, slots), cfg)
    return cfg.enum_cache[key]


def oracle_k_universal(L: JordanLattice, k: int, classic: bool, cfg: FieldCfg) -> ClassifyVerdict:
    """Decide k-universality by sweeping the finite test set."""
    if k < 1:
        raise UniversalityError("k must be >= 1")
    if not is_integral(L):
        raise UniversalityError("oracle needs an integral lattice")
    if classic and not is_classic(L):
        raise UniversalityError("classic oracle needs a classic lattice")
    tests = enumerate_classic_basic(k, cfg) if classic else enumerate_dominant(k, cfg)
    for ell in tests:
        verdict = represents_lattice(ell, L, cfg)
        if not verdict:
            return ClassifyVerdict(False, f"oracle: {verdict.reason}", witness=ell)
    return ClassifyVerdict(True, "oracle: all test lattices represented")


# ----------------------------------------------------------------------
# Family sweeps
# ----------------------------------------------------------------------
def iter_family(
    cfg: FieldCfg,
    max_components: int,
    scale_min: int,
    scale_max: int,
    max_dim: int,
    max_total_dim: int,
):
    """All canonical Jordan lattices within the stated bounds (zero excluded)."""

    def comps_at(scale):
        for d in range(1, max_dim + 1):
            yield from _proper_shapes(scale, d, cfg)
            yield from _improper_shapes(scale, d)

    def rec(start_scale, budget_comps, budget_dim, acc):
        if acc:
            yield JordanLattice(acc, cfg)
        if budget_comps == 0 or budget_dim == 0:
            return
        for s in range(start_scale, scale_max + 1):
            for comp in comps_at(s):
                if comp.dim <= budget_dim:
                    yield from rec(s + 1, budget_comps - 1, budget_dim - comp.dim, acc + [comp])

    yield from rec(scale_min, max_components, max_total_dim, [])


def random_lattice(
    cfg: FieldCfg,
    rng: random.Random,
    max_components: int = 3,
    scale_min: int = -1,
    scale_max: int = 3,
    max_dim: int = 4,
) -> JordanLattice:
    t = rng.randint(1, max_components)
    scales = sorted(rng.sample(range(scale_min, scale_max + 1), t))
    comps = []
    for s in scales:
        d = rng.randint(1, max_dim)
        if d % 2 == 0 and rng.random() < 0.5:
            comps.append(improper_component(s, d // 2, rng.random() < 0.5))
        else:
            diag = [rng.choice(cfg.unit_classes()) for _ in range(d)]
            comps.append(proper_component(s, diag, cfg))
    return JordanLattice(comps, cfg)


class FamilyBudgetError(RuntimeError):
    """The sweep family exceeds the configured instance budget."""


def crosscheck(
    cfg: FieldCfg,
    k: int,
    classic: bool,
    max_components: int = 3,
    scale_min: int = -1,
    scale_max: int = 3,
    max_dim: int = 4,
    max_total_dim: int = 5,
    sample: int | None = None,
    seed: int = 0,
    budget: int = 2_000_000,
    record_sink=None,
) -> dict:
    """Compare classifier and oracle over a family; report disagreements."""
    if sample is not None:
        rng = random.Random(seed)

        def draw():
            while True:
                yield random_lattice(cfg, rng, max_components, scale_min, scale_max, max_dim)

        lattices = draw()
    else:
        lattices = iter_family(cfg, max_components, scale_min, scale_max, max_dim, max_total_dim)

    total = agree = skipped = 0
    disagreements = []
    classify = classify_classic_k_universal if classic else classify_k_universal
    for L in lattices:
        if sample is not None and total >= sample:
            break
        if classic:
            if not is_classic(L):
                skipped += 1
                continue
        elif not is_integral(L):
            skipped += 1
            continue
        total += 1
        if total > budget:
            raise FamilyBudgetError(f"family exceeds the instance budget of {budget}")
        cv = classify(L, k, cfg)
        ov = oracle_k_universal(L, k, classic, cfg)
        ok = cv.value == ov.value
        agree += ok
        record = {
            "lattice": lattice_to_json(L),
            "classifier": {"value": cv.value, "clause": cv.clause},
            "oracle": {
                "value": ov.value,
                "clause": ov.clause,
                "witness": lattice_to_json(ov.witness) if ov.witness else None,
            },
            "agree": ok,
        }
        if record_sink is not None:
            record_sink(record)
        if not ok:
            disagreements.append(record)
    return {
        "k": k,
        "classic": classic,
        "total": total,
        "agree": agree,
        "skipped": skipped,
        "disagreements": disagreements,
    }
