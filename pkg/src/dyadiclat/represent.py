"""Lattice representability: the lower-type relation and the exact criterion.

``lower_type`` evaluates the four combinatorial conditions comparing the
Jordan invariants of two lattices; ``represents_lattice`` combines it
with the four space-level conditions that characterize representation of
one lattice by another over an unramified dyadic field.  Both quantify
over all integers i, but every quantity involved (sublattice dimensions,
discriminant ideals, spanned spaces) is constant outside the window
[s_min - 2, s_max + 2] around the extreme scale exponents of the two
lattices, and the top of the window covers both parities of i, so the
finite sweep is exhaustive.

``brute_force_represents`` is the independent low-level oracle: a
depth-first Hensel search for an integral matrix X with X^t G_L X = G_l.
It is sound in both directions: exhausting the solution tree (with no
budget overflow) refutes, since an exact solution would reduce to a node
at every level, and a node passing the Newton certificate (residual
valuation exceeding twice the minimal Jacobian-minor valuation) lifts to
an exact solution.  Everything else is Unknown.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .field import FieldCfg
from .lattices import JordanLattice
from .spaces import t_complement, t_osum, t_rep_elt, t_rep_ideal_exp, t_rep_space

REPRESENTED = "Represented"
NOT_REPRESENTED = "NotRepresented"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RepVerdict:
    value: str
    reason: str = ""
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.value == REPRESENTED


def _window(l: JordanLattice, L: JordanLattice) -> range:
    scales = l.scales + L.scales
    if not scales:
        return range(0)
    return range(min(scales) - 2, max(scales) + 3)


def lower_type(l: JordanLattice, L: JordanLattice, cfg: FieldCfg) -> RepVerdict:
    """Does l have a lower type than L (conditions (1)-(4), all i)?"""
    for i in _window(l, L):
        dl, dL = l.dim_le(i), L.dim_le(i)
        if dl > dL:
            return RepVerdict(NOT_REPRESENTED, f"Def3.2(1)@i={i}")
        if dl == dL:
            if dl > 0 and (l.fd_exp(i) + L.fd_exp(i)) % 2 != 0:
                return RepVerdict(NOT_REPRESENTED, f"Def3.2(2)@i={i}")
            if l.has_proper_at(i + 1) and not L.has_proper_at(i + 1):
                return RepVerdict(NOT_REPRESENTED, f"Def3.2(3)(a)@i={i}")
            if L.has_proper_at(i) and not l.has_proper_at(i):
                return RepVerdict(NOT_REPRESENTED, f"Def3.2(3)(b)@i={i}")
        if dl == dL - 1 and dl > 0:
            parity = (l.fd_exp(i) + L.fd_exp(i)) % 2
            if parity == (i + 1) % 2:
                if L.has_proper_at(i) and not l.has_proper_at(i):
                    return RepVerdict(NOT_REPRESENTED, f"Def3.2(4)(a)@i={i}")
            else:
                if l.has_proper_at(i + 1) and not L.has_proper_at(i + 1):
                    return RepVerdict(NOT_REPRESENTED, f"Def3.2(4)(b)@i={i}")
    return RepVerdict(REPRESENTED)


def represents_lattice(l: JordanLattice, L: JordanLattice, cfg: FieldCfg) -> RepVerdict:
    """Exact criterion: lower type plus the space conditions (1)-(4)."""
    lt = lower_type(l, L, cfg)
    if not lt:
        return lt
    neg_idx = cfg.neg_class.index
    one_idx = cfg.one_class.index
    delta_idx = cfg.delta_class.index
    two_idx = cfg.two_class.index
    mul = cfg.class_mul
    for i in _window(l, L):
        dle = l.delta_exp(i)
        dLe = L.delta_exp(i)

        # (1) F l_[i] -> F L_(i+2); complement represents Delta_i(l), Delta_i(L)
        u = l.span_bracket_t(i)
        v = L.span_paren_t(i + 2)
        if not t_rep_space(u, v, cfg):
            return RepVerdict(NOT_REPRESENTED, f"Thm3.4(1)@i={i}")
        w = t_complement(u, v, cfg)
        if not (t_rep_ideal_exp(w, dle, cfg) and t_rep_ideal_exp(w, dLe, cfg)):
            return RepVerdict(NOT_REPRESENTED, f"Thm3.4(1)@i={i}")

        # (2) if that complement is H: Delta_i(l) Delta_i(L) inside Delta_i(l)^2
        if w[0] == 2 and w[1] == neg_idx and w[2] == 1 and not (dle + dLe >= 2 * dle):
            return RepVerdict(NOT_REPRESENTED, f"Thm3.4(2)@i={i}")

        # (3) F l_<=i -> F L_(i+1) + <2^i>; complement represents 2^i or 2^i Delta
        # (4) F l_[i] -> F L_<=i+1 + <2^i>; same demand on the complement.
        # Both are automatic when the left side is the zero space: the
        # complement then contains the <2^i> summand.
        two_i = two_idx if i % 2 else one_idx
        two_i_delta = mul[two_i][delta_idx]
        u3 = l.span_le_t(i)
        if u3[0]:
            v3 = t_osum(L.span_paren_t(i + 1), (1, two_i, 1), cfg)
            if not t_rep_space(u3, v3, cfg):
                return RepVerdict(NOT_REPRESENTED, f"Thm3.4(3)@i={i}")
            w3 = t_complement(u3, v3, cfg)
            if not (t_rep_elt(w3, two_i, cfg) or t_rep_elt(w3, two_i_delta, cfg)):
                return RepVerdict(NOT_REPRESENTED, f"Thm3.4(3)@i={i}")
        if u[0]:
            v4 = t_osum(L.span_le_t(i + 1), (1, two_i, 1), cfg)
            if not t_rep_space(u, v4, cfg):
                return RepVerdict(NOT_REPRESENTED, f"Thm3.4(4)@i={i}")
            w4 = t_complement(u, v4, cfg)
            if not (t_rep_elt(w4, two_i, cfg) or t_rep_elt(w4, two_i_delta, cfg)):
                return RepVerdict(NOT_REPRESENTED, f"Thm3.4(4)@i={i}")
    return RepVerdict(REPRESENTED)


# ----------------------------------------------------------------------
# Brute-force congruence oracle
# ----------------------------------------------------------------------
class BruteForceGuard(ValueError):
    """Raised when the search instance exceeds the configured rank bounds."""


def _v2_capped(n: int, cap: int) -> int:
    n %= 1 << cap
    if n == 0:
        return cap
    return (n & -n).bit_length() - 1


class _Search:
    """State for one X^t G X = g search over O/2^target."""

    def __init__(self, l_gram, L_gram, cfg, modulus_exp, node_budget):
        self.cfg = cfg
        self.nl, self.nL = len(l_gram), len(L_gram)
        shift = max([e.den for row in L_gram for e in row]
                    + [e.den for row in l_gram for e in row] + [0])
        self.target = modulus_exp + 2 * shift
        self.f = cfg.f
        self.G = [[e.shift(shift).coeffs for e in row] for row in L_gram]
        self.g = [[e.shift(shift).coeffs for e in row] for row in l_gram]
        self.eqs = [(r, s) for r in range(self.nl) for s in range(r, self.nl)]
        self.nvars = self.nL * self.nl
        self.nbits = self.nvars * self.f
        self.node_budget = node_budget
        self.pmul = cfg._poly_mul
        self.zero = (0,) * self.f
        # multiplication-by-theta^mu matrices over F_2, for the linearized lifts
        self._theta_cols = []
        for mu in range(self.f):
            e_mu = tuple(1 if k == mu else 0 for k in range(self.f))
            self._theta_cols.append(e_mu)
        self._mulmat_cache: dict = {}

    def _gx(self, flatx):
        pmul, G = self.pmul, self.G
        out = []
        for a in range(self.nL):
            row = []
            for col in range(self.nl):
                acc = self.zero
                for b in range(self.nL):
                    acc = tuple(x + y for x, y in zip(acc, pmul(G[a][b], flatx[b * self.nl + col])))
                row.append(acc)
            out.append(row)
        return out

    def phi(self, flatx, gx=None):
        gx = gx or self._gx(flatx)
        pmul = self.pmul
        out = []
        for (r, s) in self.eqs:
            acc = self.zero
            for a in range(self.nL):
                acc = tuple(x + y for x, y in zip(acc, pmul(flatx[a * self.nl + r], gx[a][s])))
            out.append(tuple(x - y for x, y in zip(acc, self.g[r][s])))
        return out

    def res_val(self, res) -> int:
        cap = self.target + 1
        return min(min(_v2_capped(c, cap) for c in t) for t in res)

    # -- Newton certificate ------------------------------------------------
    def jacobian(self, flatx, gx):
        rows = []
        for (r, s) in self.eqs:
            row = []
            for i in range(self.nL):
                for c in range(self.nl):
                    ent = self.zero
                    if c == r:
                        ent = tuple(x + y for x, y in zip(ent, gx[i][s]))
                    if c == s:
                        ent = tuple(x + y for x, y in zip(ent, gx[i][r]))
                    row.append(ent)
            rows.append(row)
        return rows

    def _det(self, m):
        k = len(m)
        if k == 1:
            return m[0][0]
        if k == 2:
            a = self.pmul(m[0][0], m[1][1])
            b = self.pmul(m[0][1], m[1][0])
            return tuple(x - y for x, y in zip(a, b))
        acc = self.zero
        for c in range(k):
            minor = [[m[r][cc] for cc in range(k) if cc != c] for r in range(1, k)]
            term = self.pmul(m[0][c], self._det(minor))
            acc = tuple(x + (y if c % 2 == 0 else -y) for x, y in zip(acc, term))
        return acc

    def certificate(self, flatx, res=None, gx=None) -> bool:
        cap = self.target + 1
        gx = gx or self._gx(flatx)
        res = res or self.phi(flatx, gx)
        rv = self.res_val(res)
        jac = self.jacobian(flatx, gx)
        entry_min = min(
            min(_v2_capped(c, cap) for c in ent) for row in jac for ent in row
        )
        if rv < 2 * entry_min + 1:
            return False  # minors have valuation >= entry_min, bound unreachable
        ne = len(self.eqs)
        for cols in itertools.combinations(range(self.nvars), ne):
            sub = [[jac[r][c] for c in cols] for r in range(ne)]
            v = min(_v2_capped(c, cap) for c in self._det(sub))
            if rv >= 2 * v + 1:
                return True
        return False

    # -- F_2 linear algebra for the lifts -----------------------------------
    def _mul_matrix_f2(self, w):
        """Columns (as bitmasks over f rows) of multiplication by w on O/2."""
        hit = self._mulmat_cache.get(w)
        if hit is None:
            hit = []
            for mu in range(self.f):
                prod = self.pmul(w, self._theta_cols[mu])
                hit.append(sum((prod[k] & 1) << k for k in range(self.f)))
            self._mulmat_cache[w] = hit
        return hit

    def lift_children(self, flatx, level):
        """All D mod 2 with phi(X + 2^level D) = 0 mod 2^(level+1).

        The linear term of a diagonal equation is 2 (GX) D, which vanishes
        mod 2: those equations constrain only the parent's residual bit.
        """
        gx = self._gx(flatx)
        res = self.phi(flatx, gx)
        nrows = len(self.eqs) * self.f
        rows = [0] * nrows
        rhs = [0] * nrows
        for e, (r, s) in enumerate(self.eqs):
            for nu in range(self.f):
                rhs[e * self.f + nu] = (res[e][nu] >> level) & 1
            if r == s:
                continue
            for b in range(self.nL):
                for c, other in ((r, s), (s, r)):
                    w = tuple(x & 1 for x in gx[b][other])
                    cols = self._mul_matrix_f2(w)
                    var = b * self.nl + c
                    for mu in range(self.f):
                        colbits = cols[mu]
                        if colbits:
                            for nu in range(self.f):
                                if (colbits >> nu) & 1:
                                    rows[e * self.f + nu] ^= 1 << (var * self.f + mu)
        sol = _solve_f2(rows, rhs, self.nbits)
        if sol is None:
            return
        part, basis = sol
        if len(basis) > 14:
            raise _BudgetOverflow
        for picks in itertools.product((0, 1), repeat=len(basis)):
            d = part
            for p, bvec in zip(picks, basis):
                if p:
                    d ^= bvec
            yield d

    def apply_direction(self, flatx, dbits, level):
        step = 1 << level
        out = []
        for k in range(self.nvars):
            out.append(tuple(
                c + step * ((dbits >> (k * self.f + mu)) & 1)
                for mu, c in enumerate(flatx[k])
            ))
        return tuple(out)


class _BudgetOverflow(Exception):
    pass


def _solve_f2(rows, rhs, nbits):
    """Solve rows . x = rhs over F_2; returns (particular, nullspace basis) or None.

    Rows are bitmasks over nbits variables; the augmented column sits in
    bit 0.  Echelon pivots are keyed by their leading variable bit, so a
    pivot row only involves strictly lower columns besides its leader and
    back-substitution can run in ascending column order.
    """
    pivots: dict[int, int] = {}
    for i in range(len(rows)):
        cur = (rows[i] << 1) | rhs[i]
        while cur > 1:
            col = cur.bit_length() - 2
            if col in pivots:
                cur ^= pivots[col]
            else:
                pivots[col] = cur
                cur = 0
        if cur == 1:
            return None  # 0 = 1: inconsistent
    part = 0
    for col in sorted(pivots):
        prow = pivots[col]
        acc = (prow & 1) ^ (((prow >> 1) & part).bit_count() & 1)
        if acc:
            part |= 1 << col
    basis = []
    for fcol in range(nbits):
        if fcol in pivots:
            continue
        vec = 1 << fcol
        for col in sorted(pivots):
            if col == fcol:
                continue
            prow = (pivots[col] >> 1) & ~(1 << col)
            if (prow & vec).bit_count() & 1:
                vec |= 1 << col
        basis.append(vec)
    return part, basis


def brute_force_represents(
    l_gram: list,
    L_gram: list,
    cfg: FieldCfg,
    modulus_exp: int = 9,
    max_rank_l: int = 2,
    max_rank_L: int = 4,
    node_budget: int = 20000,
) -> RepVerdict:
    """Search X over O with X^t G_L X = G_l modulo 2^modulus_exp."""
    nl, nL = len(l_gram), len(L_gram)
    if nl > max_rank_l or nL > max_rank_L:
        raise BruteForceGuard(f"rank guard: {nl} into {nL} exceeds ({max_rank_l}, {max_rank_L})")
    if nl == 0:
        return RepVerdict(REPRESENTED, witness=())

    st = _Search(l_gram, L_gram, cfg, modulus_exp, node_budget)
    overflow = False
    undecided_at_depth = False
    visited = 0

    # Depth-first over the solution tree: a certified node ends the search
    # immediately, while refutation needs the whole tree exhausted anyway.
    stack = []
    for bits in itertools.product((0, 1), repeat=st.nbits):
        flatx = tuple(tuple(bits[k * st.f: (k + 1) * st.f]) for k in range(st.nvars))
        res = st.phi(flatx)
        if st.res_val(res) >= 1:
            if st.certificate(flatx, res=res):
                return RepVerdict(REPRESENTED, witness=flatx)
            stack.append((flatx, 1))

    while stack:
        flatx, level = stack.pop()
        if level >= st.target:
            undecided_at_depth = True
            continue
        visited += 1
        if visited > node_budget:
            overflow = True
            break
        try:
            children = list(st.lift_children(flatx, level))
        except _BudgetOverflow:
            overflow = True
            continue
        for dbits in children:
            cand = st.apply_direction(flatx, dbits, level)
            res = st.phi(cand)
            if st.res_val(res) < level + 1:
                raise AssertionError("linearized lift produced a bad child")
            if st.certificate(cand, res=res):
                return RepVerdict(REPRESENTED, witness=cand)
            stack.append((cand, level + 1))

    if overflow or undecided_at_depth:
        return RepVerdict(UNKNOWN, reason=f"undecided at modulus 2^{st.target}")
    return RepVerdict(NOT_REPRESENTED, reason=f"no solution modulo 2^{st.target}")
