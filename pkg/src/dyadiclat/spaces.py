"""Isomorphism-class arithmetic of nonsingular quadratic spaces over F.

A space is the triple (dim, disc, hasse) with disc a square class and
hasse the product of Hilbert symbols (a_i, a_j) over i < j of any
diagonalization.  Over a local field this triple is a complete isometry
invariant, so isotropy, Witt decomposition, representation of elements /
ideals / spaces, and orthogonal complements are all decided by the
standard case table:

    dim 2  isotropic  iff  disc = class(-1)
    dim 3  isotropic  iff  hasse = (-1, -disc)
    dim 4  isotropic  iff  disc != 1 or hasse = (-1, -1)
    dim>=5 always isotropic

U embeds in V iff the Witt index of V + (-1)U is at least dim U.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldCfg, FieldElt, IdealExp, SquareClass


class SpaceError(ValueError):
    """Domain error at the quadratic-space level."""


@dataclass(frozen=True)
class SpaceInv:
    """Isomorphism class of a nonsingular quadratic space over F."""

    dim: int
    disc: SquareClass
    hasse: int

    def __repr__(self) -> str:
        return f"SpaceInv(dim={self.dim}, disc={self.disc.unit_key}@{self.disc.val_parity}, hasse={self.hasse:+d})"


def zero_space(cfg: FieldCfg) -> SpaceInv:
    return SpaceInv(0, cfg.one_class, 1)


def space_from_diagonal(entries: list[FieldElt], cfg: FieldCfg) -> SpaceInv:
    """Invariants of <a_1, ..., a_n>; rejects singular (zero) entries."""
    classes = []
    for a in entries:
        if a.is_zero:
            raise SpaceError("singular space: zero diagonal entry")
        classes.append(cfg.class_of(a))
    return space_from_classes(classes, cfg)


def space_from_classes(classes: list[SquareClass], cfg: FieldCfg) -> SpaceInv:
    disc = cfg.one_class
    hasse = 1
    for c in classes:
        hasse *= cfg.hilbert_cls(disc, c)
        disc = cfg.class_mul2(disc, c)
    return SpaceInv(len(classes), disc, hasse)


def line(c: SquareClass, cfg: FieldCfg) -> SpaceInv:
    return SpaceInv(1, c, 1)


def hyperbolic(cfg: FieldCfg, m: int = 1) -> SpaceInv:
    h = SpaceInv(2, cfg.neg_class, 1)
    out = zero_space(cfg)
    for _ in range(m):
        out = orthogonal_sum(out, h, cfg)
    return out


def orthogonal_sum(u: SpaceInv, v: SpaceInv, cfg: FieldCfg) -> SpaceInv:
    return SpaceInv(
        u.dim + v.dim,
        cfg.class_mul2(u.disc, v.disc),
        u.hasse * v.hasse * cfg.hilbert_cls(u.disc, v.disc),
    )


def signed_disc(v: SpaceInv, cfg: FieldCfg) -> SquareClass:
    """d_pm(V) = (-1)^(n(n-1)/2) d(V); defined for dim >= 1."""
    if v.dim < 1:
        raise SpaceError("signed discriminant needs dim >= 1")
    if (v.dim * (v.dim - 1) // 2) % 2:
        return cfg.class_neg(v.disc)
    return v.disc


def scale_space(v: SpaceInv, c: FieldElt, cfg: FieldCfg) -> SpaceInv:
    if c.is_zero:
        raise SpaceError("cannot scale a space by zero")
    return scale_space_cls(v, cfg.class_of(c), cfg)


def scale_space_cls(v: SpaceInv, c: SquareClass, cfg: FieldCfg) -> SpaceInv:
    n = v.dim
    disc = v.disc
    if n % 2:
        disc = cfg.class_mul2(disc, c)
    hasse = v.hasse
    if (n * (n - 1) // 2) % 2:
        hasse *= cfg.hilbert_cls(c, c)
    if (n - 1) % 2:
        hasse *= cfg.hilbert_cls(c, v.disc)
    return SpaceInv(n, disc, hasse)


def is_isotropic(v: SpaceInv, cfg: FieldCfg) -> bool:
    if v.dim <= 1:
        return False
    if v.dim == 2:
        return v.disc == cfg.neg_class
    if v.dim == 3:
        neg_disc = cfg.class_neg(v.disc)
        return v.hasse == cfg.hilbert_cls(cfg.neg_class, neg_disc)
    if v.dim == 4:
        return v.disc != cfg.one_class or v.hasse == cfg.hilbert_cls(cfg.neg_class, cfg.neg_class)
    return True


def witt_decompose(v: SpaceInv, cfg: FieldCfg) -> tuple[int, SpaceInv]:
    """V = H^w + kernel with the kernel anisotropic."""
    w = 0
    cur = v
    while is_isotropic(cur, cfg):
        disc = cfg.class_mul2(cfg.neg_class, cur.disc)
        hasse = cur.hasse * cfg.hilbert_cls(cfg.neg_class, disc)
        cur = SpaceInv(cur.dim - 2, disc, hasse)
        w += 1
    return w, cur


def represents_element(v: SpaceInv, c: FieldElt, cfg: FieldCfg) -> bool:
    if c.is_zero:
        raise SpaceError("represents_element expects c != 0; use represents_ideal")
    return represents_element_cls(v, cfg.class_of(c), cfg)


def represents_element_cls(v: SpaceInv, c: SquareClass, cfg: FieldCfg) -> bool:
    return t_rep_elt((v.dim, v.disc.index, v.hasse), c.index, cfg)


def represents_ideal(v: SpaceInv, ideal: IdealExp, cfg: FieldCfg) -> bool:
    """2^i O is represented iff some unit class u has u*2^(i mod 2) in Q(V)."""
    return t_rep_ideal_exp((v.dim, v.disc.index, v.hasse), ideal.exp, cfg)


def represents_space(u: SpaceInv, v: SpaceInv, cfg: FieldCfg) -> bool:
    """U embeds isometrically in V."""
    return t_rep_space((u.dim, u.disc.index, u.hasse), (v.dim, v.disc.index, v.hasse), cfg)


def complement(u: SpaceInv, v: SpaceInv, cfg: FieldCfg) -> SpaceInv:
    """The space W with V = U + W (Witt cancellation); requires U -> V."""
    if not represents_space(u, v, cfg):
        raise SpaceError("complement: U is not represented by V")
    disc = cfg.class_mul2(u.disc, v.disc)
    hasse = v.hasse * u.hasse * cfg.hilbert_cls(u.disc, disc)
    return SpaceInv(v.dim - u.dim, disc, hasse)


# ----------------------------------------------------------------------
# Int-triple fast paths: a space as (dim, disc index, hasse), used by the
# representability hot loops.  Semantics match the SpaceInv operations.
# ----------------------------------------------------------------------
def t_of(v: SpaceInv) -> tuple:
    return (v.dim, v.disc.index, v.hasse)


def t_space(t: tuple, cfg: FieldCfg) -> SpaceInv:
    return SpaceInv(t[0], cfg.square_classes[t[1]], t[2])


def t_osum(a: tuple, b: tuple, cfg: FieldCfg) -> tuple:
    return (a[0] + b[0], cfg.class_mul[a[1]][b[1]], a[2] * b[2] * cfg.hilb[a[1]][b[1]])


def t_iso(t: tuple, cfg: FieldCfg) -> bool:
    n = t[0]
    if n <= 1:
        return False
    neg = cfg.neg_class.index
    if n == 2:
        return t[1] == neg
    if n == 3:
        return t[2] == cfg.hilb[neg][cfg.class_mul[neg][t[1]]]
    if n == 4:
        return t[1] != cfg.one_class.index or t[2] == cfg.hilb[neg][neg]
    return True


def t_rep_space(u: tuple, v: tuple, cfg: FieldCfg) -> bool:
    du = u[0]
    if du == 0:
        return True
    diff = v[0] - du
    if diff < 0:
        return False
    if diff >= 3:
        return True
    key = (u, v)
    cache = cfg.rep_space_cache
    hit = cache.get(key)
    if hit is None:
        neg = cfg.neg_class.index
        # (-1)-scaling of u
        disc = cfg.class_mul[u[1]][neg] if du % 2 else u[1]
        hasse = u[2]
        if (du * (du - 1) // 2) % 2:
            hasse *= cfg.hilb[neg][neg]
        if (du - 1) % 2:
            hasse *= cfg.hilb[neg][u[1]]
        cur = t_osum(v, (du, disc, hasse), cfg)
        w = 0
        while w < du and t_iso(cur, cfg):
            d2 = cfg.class_mul[neg][cur[1]]
            cur = (cur[0] - 2, d2, cur[2] * cfg.hilb[neg][d2])
            w += 1
        hit = w >= du
        cache[key] = hit
    return hit


def t_complement(u: tuple, v: tuple, cfg: FieldCfg) -> tuple:
    """Complement invariants; the caller guarantees u is represented by v."""
    disc = cfg.class_mul[u[1]][v[1]]
    return (v[0] - u[0], disc, v[2] * u[2] * cfg.hilb[u[1]][disc])


def t_rep_elt(v: tuple, cidx: int, cfg: FieldCfg) -> bool:
    if v[0] < 1:
        return False
    key = (v, cidx)
    cache = cfg.rep_elt_cache
    hit = cache.get(key)
    if hit is None:
        neg_c = cfg.class_mul[cidx][cfg.neg_class.index]
        hit = t_iso(t_osum(v, (1, neg_c, 1), cfg), cfg)
        cache[key] = hit
    return hit


def t_rep_ideal_exp(v: tuple, exp, cfg: FieldCfg) -> bool:
    if exp == float("inf"):
        return True
    if v[0] < 1:
        return False
    parity = int(exp) % 2
    key = (v, parity)
    cache = cfg.rep_ideal_cache
    hit = cache.get(key)
    if hit is None:
        nu = cfg._nu
        hit = any(t_rep_elt(v, parity * nu + u, cfg) for u in range(nu))
        cache[key] = hit
    return hit


def diagonal_realization(v: SpaceInv, cfg: FieldCfg) -> list[SquareClass]:
    """A diagonal form with the given invariants; errors if none exists.

    Non-realizable triples: dim 0 with nontrivial data, dim 1 with
    hasse = -1, and dim 2 with disc = class(-1) but hasse != +1 (every
    isotropic binary space is H, whose Hasse symbol is +1).
    """
    if v.dim == 0:
        if v.disc != cfg.one_class or v.hasse != 1:
            raise SpaceError("dim-0 space must have trivial invariants")
        return []
    if v.dim == 1:
        if v.hasse != 1:
            raise SpaceError("dim-1 space must have hasse = +1")
        return [v.disc]
    if v.dim == 2:
        for a in cfg.square_classes:
            if cfg.hilbert_cls(a, cfg.class_neg(v.disc)) == v.hasse:
                return [a, cfg.class_mul2(a, v.disc)]
        raise SpaceError("no binary space with disc = -1 and hasse != +1")
    for a in cfg.square_classes:
        rest_disc = cfg.class_mul2(v.disc, a)
        rest_hasse = v.hasse * cfg.hilbert_cls(a, rest_disc)
        try:
            rest = diagonal_realization(SpaceInv(v.dim - 1, rest_disc, rest_hasse), cfg)
        except SpaceError:
            continue
        return [a] + rest
    raise SpaceError("unrealizable space invariants")  # unreachable for dim >= 3
