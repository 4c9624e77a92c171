"""Quadratic lattices over O_F as Jordan splittings.

A lattice is an ordered list of modular components of strictly increasing
scale 2^s.  A proper component (norm = scale) is stored as a multiset of
unit square classes, the component being 2^s<e_1, ..., e_n>; an improper
component (norm = 2 * scale) is stored as a half-dimension m and a type
bit: over an unramified dyadic field every improper modular lattice is
the 2^s-scaling of A(0,0)^m ("plain") or A(0,0)^(m-1) + A(2,2*rho)
("delta"), the two cases being told apart by the signed discriminant of
the spanned space (trivial class vs the Delta class).

Gram matrices are split without division: a unimodular pivot ("proper",
a unit diagonal entry) or a 2x2 block with unit off-diagonal entry
("improper") is removed by a basis change of unit determinant, keeping
all entries exact.  Pieces of equal scale are then merged; a mixed group
(a unit pivot alongside improper blocks) is rediagonalized with the
explicit three-vector basis

    v1 = u + w1,   x2 = b12*u - q*w2,   x3 = (their orthogonal completion)

whose Q-values q + b11, q*(b12^2 + q*b22) are units, so a proper
component always ends up with a genuine diagonal shape.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass

from .field import INF, FieldCfg, FieldElt, IdealExp, SquareClass, ZERO_IDEAL, parse_elt
from .spaces import SpaceInv, orthogonal_sum, space_from_classes, zero_space

MAX_DENOMINATOR_EXP = 8


class LatticeError(ValueError):
    """Invalid lattice data: bad Jordan shape, singular Gram matrix, etc."""


@dataclass(frozen=True)
class JordanComponent:
    """One modular component of a Jordan splitting."""

    scale_exp: int
    proper: bool
    diag: tuple | None = None        # proper: sorted unit SquareClass multiset
    m: int | None = None             # improper: half-dimension
    delta_type: bool | None = None   # improper: True for the A(2,2*rho) type

    @property
    def dim(self) -> int:
        return len(self.diag) if self.proper else 2 * self.m

    @property
    def norm_exp(self) -> int:
        return self.scale_exp + (0 if self.proper else 1)

    def key(self) -> tuple:
        if self.proper:
            return (self.scale_exp, True, tuple(c.unit_key for c in self.diag))
        return (self.scale_exp, False, self.m, self.delta_type)

    def span(self, cfg: FieldCfg) -> SpaceInv:
        if self.proper:
            two_s = cfg.class_two_pow(self.scale_exp)
            return space_from_classes([cfg.class_mul2(c, two_s) for c in self.diag], cfg)
        h = SpaceInv(2, cfg.neg_class, 1)
        out = zero_space(cfg)
        plains = self.m - (1 if self.delta_type else 0)
        for _ in range(plains):
            out = orthogonal_sum(out, h, cfg)
        if self.delta_type:
            # 2^s A(2, 2 rho) spans the 2^(s+1)-scaling of <1, -Delta>
            # (its diagonalization is <2^(s+1), 2^(s+1)(4 rho - 1)/4-ish>).
            two_n = cfg.class_two_pow(self.scale_exp + 1)
            tail = space_from_classes(
                [two_n, cfg.class_mul2(two_n, cfg.class_mul2(cfg.neg_class, cfg.delta_class))], cfg
            )
            out = orthogonal_sum(out, tail, cfg)
        return out


def proper_component(scale_exp: int, diag, cfg: FieldCfg) -> JordanComponent:
    classes = tuple(sorted(diag, key=lambda c: c.unit_key))
    if not classes:
        raise LatticeError("proper component needs a nonempty diagonal")
    for c in classes:
        if c.val_parity != 0:
            raise LatticeError("proper diagonal entries must be unit classes")
    return JordanComponent(scale_exp, True, diag=classes)


def improper_component(scale_exp: int, m: int, delta_type: bool) -> JordanComponent:
    if not isinstance(m, int) or m < 1:
        raise LatticeError("improper component needs an integer half-dimension m >= 1")
    return JordanComponent(scale_exp, False, m=m, delta_type=bool(delta_type))


class JordanLattice:
    """A validated Jordan splitting, with precomputed sublattice profiles.

    Components are kept in strictly increasing scale order.  The empty
    list represents the zero lattice (norm and scale both the zero
    ideal).
    """

    __slots__ = ("cfg", "components", "scales", "norm_exps", "_dim_prefix",
                 "_fd_prefix", "_spans", "_spans_t", "_proper_scales", "_key")

    def __init__(self, components, cfg: FieldCfg):
        comps = tuple(components)
        for a, b in itertools.pairwise(comps):
            if a.scale_exp >= b.scale_exp:
                raise LatticeError("Jordan scales must strictly increase; merge equal-scale components")
        self.cfg = cfg
        self.components = comps
        self.scales = [c.scale_exp for c in comps]
        self.norm_exps = [c.norm_exp for c in comps]
        assert all(a <= b for a, b in itertools.pairwise(self.norm_exps))
        dims = [c.dim for c in comps]
        self._dim_prefix = [0]
        for d in dims:
            self._dim_prefix.append(self._dim_prefix[-1] + d)
        self._fd_prefix = [0]
        for c in comps:
            self._fd_prefix.append(self._fd_prefix[-1] + c.scale_exp * c.dim)
        spans = [zero_space(cfg)]
        for c in comps:
            spans.append(orthogonal_sum(spans[-1], c.span(cfg), cfg))
        self._spans = spans
        self._spans_t = [(s.dim, s.disc.index, s.hasse) for s in spans]
        self._proper_scales = {c.scale_exp for c in comps if c.proper}
        self._key = tuple(c.key() for c in comps)

    # -- structural helpers -------------------------------------------------
    @property
    def dim(self) -> int:
        return self._dim_prefix[-1]

    @property
    def is_zero(self) -> bool:
        return not self.components

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, JordanLattice) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        parts = []
        for c in self.components:
            if c.proper:
                parts.append(f"2^{c.scale_exp}<{','.join(str(k.unit_key) for k in c.diag)}>")
            else:
                parts.append(f"2^{c.scale_exp}I(m={c.m},{'delta' if c.delta_type else 'plain'})")
        return "JordanLattice(" + " _|_ ".join(parts) + ")" if parts else "JordanLattice(0)"

    # -- index counts for the three sublattice families ---------------------
    def _count_le(self, i: int) -> int:
        return bisect_right(self.scales, i)

    def _count_paren(self, i: int) -> int:
        return bisect_right(self.norm_exps, i)

    def _count_bracket(self, i: int) -> int:
        r = bisect_right(self.scales, i)
        if r < len(self.components):
            c = self.components[r]
            if c.scale_exp == i + 1 and not c.proper:
                return r + 1
        return r

    def dim_le(self, i: int) -> int:
        return self._dim_prefix[self._count_le(i)]

    def dim_paren(self, i: int) -> int:
        return self._dim_prefix[self._count_paren(i)]

    def dim_bracket(self, i: int) -> int:
        return self._dim_prefix[self._count_bracket(i)]

    def span_le(self, i: int) -> SpaceInv:
        return self._spans[self._count_le(i)]

    def span_paren(self, i: int) -> SpaceInv:
        return self._spans[self._count_paren(i)]

    def span_bracket(self, i: int) -> SpaceInv:
        return self._spans[self._count_bracket(i)]

    def span_le_t(self, i: int) -> tuple:
        return self._spans_t[self._count_le(i)]

    def span_paren_t(self, i: int) -> tuple:
        return self._spans_t[self._count_paren(i)]

    def span_bracket_t(self, i: int) -> tuple:
        return self._spans_t[self._count_bracket(i)]

    def fd_exp(self, i: int):
        """ord of the ideal d(L_{<=i}) O_F, or +inf for the zero ideal."""
        r = self._count_le(i)
        return INF if r == 0 else self._fd_prefix[r]

    def has_proper_at(self, s: int) -> bool:
        return s in self._proper_scales

    def delta_exp(self, i: int):
        if self.has_proper_at(i + 1):
            return i + 1
        if self.has_proper_at(i + 2):
            return i + 2
        return INF


# ----------------------------------------------------------------------
# Constructors and module-level operations
# ----------------------------------------------------------------------
def lattice_from_jordan(components, cfg: FieldCfg) -> JordanLattice:
    return JordanLattice(components, cfg)


def norm_ideal(lat: JordanLattice) -> IdealExp:
    if lat.is_zero:
        return ZERO_IDEAL
    return IdealExp(lat.components[0].norm_exp)


def scale_ideal(lat: JordanLattice) -> IdealExp:
    if lat.is_zero:
        return ZERO_IDEAL
    return IdealExp(lat.components[0].scale_exp)


def is_integral(lat: JordanLattice) -> bool:
    return norm_ideal(lat).exp >= 0


def is_classic(lat: JordanLattice) -> bool:
    return scale_ideal(lat).exp >= 0


def sublattice(lat: JordanLattice, i: int, kind: str) -> JordanLattice:
    counts = {"le": lat._count_le, "paren": lat._count_paren, "bracket": lat._count_bracket}
    try:
        r = counts[kind](i)
    except KeyError:
        raise LatticeError(f"unknown sublattice kind {kind!r}") from None
    return JordanLattice(lat.components[:r], lat.cfg)


def fd_ideal(lat: JordanLattice, i: int) -> IdealExp:
    return IdealExp(lat.fd_exp(i))


def delta_ideal(lat: JordanLattice, i: int) -> IdealExp:
    return IdealExp(lat.delta_exp(i))


def space_of(lat: JordanLattice, cfg: FieldCfg) -> SpaceInv:
    return lat._spans[-1]


def signed_disc_of_component(comp: JordanComponent, cfg: FieldCfg) -> SquareClass:
    from .spaces import signed_disc

    return signed_disc(comp.span(cfg), cfg)


def A_lattice(alpha: FieldElt, beta: FieldElt, scale: int, cfg: FieldCfg) -> list:
    """Gram matrix of 2^scale * A(alpha, beta) = 2^scale * [[alpha,1],[1,beta]]."""
    for x in (alpha, beta):
        if not x.is_zero and x.valuation() < 0:
            raise LatticeError("A(alpha, beta) requires integral alpha, beta")
    one = cfg.one().shift(scale)
    return [[alpha.shift(scale), one], [one, beta.shift(scale)]]


def gram_from_jordan(lat: JordanLattice, cfg: FieldCfg) -> list:
    """Exact block-diagonal Gram matrix realizing the splitting."""
    return gram_from_components(lat.components, cfg)


def gram_from_components(components, cfg: FieldCfg) -> list:
    """Gram matrix of an orthogonal sum of components (scales may repeat)."""
    blocks = []
    for c in components:
        s = c.scale_exp
        if c.proper:
            for cls in c.diag:
                blocks.append([[cfg.class_reps[cls.index].shift(s)]])
        else:
            plains = c.m - (1 if c.delta_type else 0)
            for _ in range(plains):
                blocks.append(A_lattice(cfg.zero(), cfg.zero(), s, cfg))
            if c.delta_type:
                blocks.append(A_lattice(cfg.elt(2), cfg.elt(2) * cfg.rho, s, cfg))
    n = sum(len(b) for b in blocks)
    gram = [[cfg.zero()] * n for _ in range(n)]
    at = 0
    for b in blocks:
        k = len(b)
        for r in range(k):
            for s in range(k):
                gram[at + r][at + s] = b[r][s]
        at += k
    return gram


# ----------------------------------------------------------------------
# Jordan splitting of a Gram matrix
# ----------------------------------------------------------------------
def _validate_gram(gram: list, cfg: FieldCfg) -> None:
    n = len(gram)
    for row in gram:
        if len(row) != n:
            raise LatticeError("Gram matrix must be square")
    for i in range(n):
        for j in range(n):
            g = gram[i][j]
            if not isinstance(g, FieldElt):
                raise LatticeError("Gram entries must be field elements")
            if g.den > MAX_DENOMINATOR_EXP:
                raise LatticeError(f"Gram denominators deeper than 2^-{MAX_DENOMINATOR_EXP} rejected")
            if i < j and g != gram[j][i]:
                raise LatticeError("Gram matrix must be symmetric")


def jordan_split(gram: list, cfg: FieldCfg) -> JordanLattice:
    """Split a symmetric nonsingular Gram matrix into Jordan components.

    Pivot policy: take the minimal valuation over all entries; among
    entries achieving it, prefer a diagonal (proper) pivot, then the
    lexicographically first position.  Exactness of the arithmetic makes
    every pivot decision certain.
    """
    _validate_gram(gram, cfg)
    work = [row[:] for row in gram]
    base = 0
    pieces = []  # (scale_exp, 'p', q) or (scale_exp, 'i', (b11, b12, b22))

    while work:
        n = len(work)
        vals = [[work[i][j].valuation() for j in range(n)] for i in range(n)]
        s = min(min(row) for row in vals)
        if s == INF:
            raise LatticeError("singular Gram matrix")
        if s != 0:
            work = [[g.shift(-s) for g in row] for row in work]
            base += s
            vals = [[v - s for v in row] for row in vals]

        piv = next((i for i in range(n) if vals[i][i] == 0), None)
        if piv is not None:
            q = work[piv][piv]
            pieces.append((base, "p", q))
            rest = [r for r in range(n) if r != piv]
            col = [work[r][piv] for r in rest]
            work = [
                [q * (q * work[r][t] - col[a] * col[b]) for b, t in enumerate(rest)]
                for a, r in enumerate(rest)
            ]
        else:
            pi, pj = next(
                (i, j) for i in range(n) for j in range(i + 1, n) if vals[i][j] == 0
            )
            b11, b12, b22 = work[pi][pi], work[pi][pj], work[pj][pj]
            pieces.append((base, "i", (b11, b12, b22)))
            det = b11 * b22 - b12 * b12
            rest = [r for r in range(n) if r not in (pi, pj)]
            alpha = [b22 * work[r][pi] - b12 * work[r][pj] for r in rest]
            beta = [b11 * work[r][pj] - b12 * work[r][pi] for r in rest]
            work = [
                [
                    det * (det * work[r][t] - alpha[a] * work[t][pi] - beta[a] * work[t][pj])
                    for b, t in enumerate(rest)
                ]
                for a, r in enumerate(rest)
            ]

    return JordanLattice(_merge_pieces(pieces, cfg), cfg)


def _merge_pieces(pieces: list, cfg: FieldCfg) -> list:
    comps = []
    for scale, group in itertools.groupby(pieces, key=lambda p: p[0]):
        group = list(group)
        qs = [p[2] for p in group if p[1] == "p"]
        blocks = [p[2] for p in group if p[1] == "i"]
        if qs:
            diag = list(qs)
            for b11, b12, b22 in blocks:
                q = diag.pop()
                q1 = q + b11
                q2 = q * (b12 * b12 + q * b22)
                det3 = q * (b11 * b22 - b12 * b12)
                diag += [q1, q2, det3 * q1 * q2]
            comps.append(proper_component(scale, [cfg.class_of(q) for q in diag], cfg))
        else:
            bit = False
            for b11, b12, b22 in blocks:
                d_pm = cfg.class_neg(cfg.class_of(b11 * b22 - b12 * b12))
                if d_pm == cfg.delta_class:
                    bit = not bit
                elif d_pm != cfg.one_class:
                    raise LatticeError("improper block with invalid signed discriminant")
            comps.append(improper_component(scale, len(blocks), bit))
    return comps


# ----------------------------------------------------------------------
# JSON codecs
# ----------------------------------------------------------------------
def lattice_from_json(data, cfg: FieldCfg) -> JordanLattice:
    """Accepts {"gram": [[...]]} or {"jordan": [component, ...]}."""
    if not isinstance(data, dict):
        raise LatticeError("lattice JSON must be an object")
    if "gram" in data:
        rows = data["gram"]
        gram = [[parse_elt(cfg, e) for e in row] for row in rows]
        return jordan_split(gram, cfg)
    if "jordan" in data:
        comps = []
        for rec in data["jordan"]:
            scale = rec["scale"]
            if not isinstance(scale, int):
                raise LatticeError("component scale must be an integer")
            if rec.get("proper", True):
                diag = []
                for text in rec["diag"]:
                    e = parse_elt(cfg, text)
                    if e.is_zero or e.valuation() != 0:
                        raise LatticeError("proper diagonal entries must be units")
                    diag.append(cfg.class_of(e))
                comps.append(proper_component(scale, diag, cfg))
            else:
                kind = rec.get("type", "plain")
                if kind not in ("plain", "delta"):
                    raise LatticeError(f"improper type must be plain|delta, got {kind!r}")
                comps.append(improper_component(scale, rec["m"], kind == "delta"))
        return JordanLattice(comps, cfg)
    raise LatticeError('lattice JSON needs a "gram" or "jordan" key')


def lattice_to_json(lat: JordanLattice) -> dict:
    cfg = lat.cfg
    out = []
    for c in lat.components:
        if c.proper:
            out.append({
                "scale": c.scale_exp,
                "proper": True,
                "diag": [cfg.class_reps[k.index].as_text() for k in c.diag],
            })
        else:
            out.append({
                "scale": c.scale_exp,
                "proper": False,
                "m": c.m,
                "type": "delta" if c.delta_type else "plain",
            })
    return {"jordan": out}
