"""Exact arithmetic in unramified 2-adic fields.

F is the unramified extension of Q_2 of residue degree f, with valuation
ring O_F and uniformizer 2.  Elements are stored exactly as polynomials in
a root theta of a fixed degree-f polynomial, with integer coordinates and
a dyadic denominator 2^k.  Because the coordinates are exact, valuations,
zero tests and square-class extraction never lose precision; the
``precision`` knob of :func:`make_field` is kept as a validated lower
bound (mod-8 residues decide unit squares when e = 1, so precision >= 5
is the mathematical floor).

Fixed residue polynomials (monic, coefficients lifted to {0,1}):

    f=1 : x + 1
    f=2 : x^2 + x + 1
    f=3 : x^3 + x + 1
    f=4 : x^4 + x + 1
    f=5 : x^5 + x^2 + 1
    f=6 : x^6 + x + 1
    f=7 : x^7 + x + 1
    f=8 : x^8 + x^4 + x^3 + x^2 + 1

Larger degrees fall back to a deterministic lexicographic search.  Every
polynomial is re-checked for irreducibility at construction time.

The square-class group F*/F*^2 has order 2^(f+2); unit classes are keyed
by their canonical representative in (O/8O)* modulo squares.  The Hilbert
symbol is realized as a symmetric bilinear pairing on that F_2-vector
space: the Gram matrix on a basis {2, Delta, c_1, ..., c_f} is computed
from the norm groups of the quadratic extensions F(sqrt(c_i)) (a finite
sweep of 1 - c*s^2 over s mod 16), together with the unramified-extension
rule (Delta, w) = (-1)^v(w).  The finished table is validated against the
identities (a, -a) = +1 and symmetry before use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

INF = float("inf")

_IRREDUCIBLE = {
    1: (1,),
    2: (1, 1),
    3: (1, 1, 0),
    4: (1, 1, 0, 0),
    5: (1, 0, 1, 0, 0),
    6: (1, 1, 0, 0, 0, 0),
    7: (1, 1, 0, 0, 0, 0, 0),
    8: (1, 0, 1, 1, 1, 0, 0, 0),
}


class FieldError(ValueError):
    """Domain error in field construction or element operations."""


@dataclass(frozen=True)
class IdealExp:
    """A fractional ideal 2^n * O_F, or the zero ideal (exp = +inf).

    Containment: 2^a O <= 2^b O  iff  a >= b; the zero ideal is contained
    in every ideal.  Products add exponents, +inf absorbing.
    """

    exp: int | float

    @property
    def is_zero(self) -> bool:
        return self.exp == INF

    def __mul__(self, other: "IdealExp") -> "IdealExp":
        if self.is_zero or other.is_zero:
            return IdealExp(INF)
        return IdealExp(self.exp + other.exp)

    def contains(self, other: "IdealExp") -> bool:
        """other subseteq self."""
        return other.exp >= self.exp

    def __repr__(self) -> str:
        return "IdealExp(zero)" if self.is_zero else f"IdealExp({self.exp})"


ZERO_IDEAL = IdealExp(INF)


@dataclass(frozen=True)
class SquareClass:
    """An element of F*/F*^2.

    val_parity is the valuation mod 2; unit_key is the canonical
    representative of the unit part in (O/8O)* modulo unit squares.
    ``index`` positions the class inside FieldCfg's tables.
    """

    val_parity: int
    unit_key: tuple
    index: int

    def __eq__(self, other) -> bool:
        if not isinstance(other, SquareClass):
            return NotImplemented
        return self.val_parity == other.val_parity and self.unit_key == other.unit_key

    def __hash__(self) -> int:
        return hash((self.val_parity, self.unit_key))

    def __repr__(self) -> str:
        return f"SquareClass(p={self.val_parity}, u={self.unit_key})"


def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1 if n else -1


class FieldElt:
    """An element of F, stored as exact coordinates / 2^den.

    Coordinates are arbitrary-size integers relative to the power basis
    1, theta, ..., theta^(f-1).  Canonical form: den = 0 when the element
    is integral, otherwise at least one coordinate is odd.
    """

    __slots__ = ("cfg", "coeffs", "den")

    def __init__(self, cfg: "FieldCfg", coeffs: Iterable[int], den: int = 0):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != cfg.f:
            raise FieldError(f"expected {cfg.f} coordinates, got {len(coeffs)}")
        if den < 0:
            coeffs = tuple(c << (-den) for c in coeffs)
            den = 0
        if all(c == 0 for c in coeffs):
            coeffs, den = (0,) * cfg.f, 0
        else:
            while den > 0 and all(c % 2 == 0 for c in coeffs):
                coeffs = tuple(c // 2 for c in coeffs)
                den -= 1
        object.__setattr__(self, "cfg", cfg)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("FieldElt is immutable")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def valuation(self) -> int | float:
        if self.is_zero:
            return INF
        return min(_v2(c) for c in self.coeffs if c) - self.den

    def __add__(self, other: "FieldElt") -> "FieldElt":
        d = max(self.den, other.den)
        a = tuple(c << (d - self.den) for c in self.coeffs)
        b = tuple(c << (d - other.den) for c in other.coeffs)
        return FieldElt(self.cfg, tuple(x + y for x, y in zip(a, b)), d)

    def __neg__(self) -> "FieldElt":
        return FieldElt(self.cfg, tuple(-c for c in self.coeffs), self.den)

    def __sub__(self, other: "FieldElt") -> "FieldElt":
        return self + (-other)

    def __mul__(self, other: "FieldElt") -> "FieldElt":
        prod = self.cfg._poly_mul(self.coeffs, other.coeffs)
        return FieldElt(self.cfg, prod, self.den + other.den)

    def shift(self, k: int) -> "FieldElt":
        """Multiply by 2^k."""
        if k >= 0:
            return FieldElt(self.cfg, tuple(c << k for c in self.coeffs), self.den)
        return FieldElt(self.cfg, self.coeffs, self.den - k)

    def unit_part(self) -> "FieldElt":
        """self / 2^valuation (self nonzero)."""
        if self.is_zero:
            raise FieldError("zero has no unit part")
        v = min(_v2(c) for c in self.coeffs if c)
        return FieldElt(self.cfg, tuple(c >> v for c in self.coeffs), 0)

    def residue(self, m: int) -> tuple:
        """Coordinates mod 2^m; requires an integral element."""
        if self.den != 0:
            raise FieldError("residue of a non-integral element")
        mask = 1 << m
        return tuple(c % mask for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldElt):
            return NotImplemented
        return self.cfg.f == other.cfg.f and self.coeffs == other.coeffs and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.coeffs, self.den))

    def __repr__(self) -> str:
        return f"FieldElt({self.as_text()})"

    def as_text(self) -> str:
        body = ",".join(str(c) for c in self.coeffs) if self.cfg.f > 1 else str(self.coeffs[0])
        return body if self.den == 0 else f"{body}/2^{self.den}"


def _res_poly_mul(a: tuple, b: tuple, modulus: tuple) -> tuple:
    """Product in F_2[x]/(m(x)); inputs are bit tuples of length f."""
    f = len(modulus)
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] ^= bj
    for d in range(2 * f - 2, f - 1, -1):
        if prod[d]:
            prod[d] = 0
            for j, mj in enumerate(modulus):
                prod[d - f + j] ^= mj
    return tuple(prod[:f])


def _is_irreducible_f2(modulus: tuple) -> bool:
    """Irreducibility of x^f + sum m_j x^j over F_2 (Rabin's test).

    Polynomials are handled as bitmasks; the test checks
    x^(2^f) == x mod m together with gcd(x^(2^(f/p)) - x, m) = 1 for every
    prime divisor p of f.
    """
    f = len(modulus)
    if f == 1:
        return True
    m_mask = (1 << f) | sum(b << j for j, b in enumerate(modulus))

    def mulmod(a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> f & 1:
                a ^= m_mask
        return r

    def gcd(a: int, b: int) -> int:
        while b:
            while a.bit_length() >= b.bit_length() and a:
                a ^= b << (a.bit_length() - b.bit_length())
            a, b = b, a
        return a

    x = 0b10
    powers = []
    t = x
    for _ in range(f):
        t = mulmod(t, t)
        powers.append(t)
    if powers[-1] != x:
        return False
    for p in range(2, f + 1):
        if f % p == 0 and all(p % q for q in range(2, p)):
            if gcd(powers[f // p - 1] ^ x, m_mask) != 1:
                return False
    return True


def _find_irreducible(f: int) -> tuple:
    for tail in itertools.product((0, 1), repeat=f):
        if _is_irreducible_f2(tail):
            return tail
    raise FieldError(f"no irreducible polynomial of degree {f}")  # unreachable


class FieldCfg:
    """The unramified extension F of Q_2 of residue degree f.

    Construction precomputes the square-class tables: canonical unit-class
    keys in (O/8O)*, the class multiplication table, quadratic defects and
    the full Hilbert symbol table.  All tables are validated against the
    symbol identities before the configuration is returned.
    """

    def __init__(self, f: int, precision: int = 12):
        if not isinstance(f, int) or f < 1:
            raise FieldError(f"residue degree must be a positive integer, got {f!r}")
        if not isinstance(precision, int) or precision < 5:
            raise FieldError(f"precision must be an integer >= 5, got {precision!r}")
        self.f = f
        self.precision = precision
        self.modulus = _IRREDUCIBLE.get(f) or _find_irreducible(f)
        if not _is_irreducible_f2(self.modulus):
            raise FieldError(f"residue polynomial for f={f} is not irreducible")

        self.rho = self._find_rho()
        self.delta = self.one() + self.rho.shift(2)

        self._build_class_tables()
        self._build_hilbert_table()
        self._validate_tables()

        # Memo caches shared by the space-level predicates.
        self.rep_elt_cache: dict = {}
        self.rep_ideal_cache: dict = {}
        self.rep_space_cache: dict = {}
        self.enum_cache: dict = {}

    # ------------------------------------------------------------------
    # Element constructors and raw arithmetic
    # ------------------------------------------------------------------
    def elt(self, n: int) -> FieldElt:
        return FieldElt(self, (n,) + (0,) * (self.f - 1))

    def elt_from_coeffs(self, coeffs: Iterable[int], den: int = 0) -> FieldElt:
        return FieldElt(self, coeffs, den)

    def zero(self) -> FieldElt:
        return self.elt(0)

    def one(self) -> FieldElt:
        return self.elt(1)

    def _poly_mul(self, a: tuple, b: tuple) -> tuple:
        f = self.f
        if f == 1:
            return (a[0] * b[0],)
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        m = self.modulus
        for d in range(2 * f - 2, f - 1, -1):
            t = prod[d]
            if t:
                prod[d] = 0
                for j, mj in enumerate(m):
                    if mj:
                        prod[d - f + j] -= t
        return tuple(prod[:f])

    def _mul_mod8(self, a: tuple, b: tuple) -> tuple:
        return tuple(c % 8 for c in self._poly_mul(a, b))

    # ------------------------------------------------------------------
    # Residue field (F_2^f) helpers
    # ------------------------------------------------------------------
    def _res_trace(self, a: tuple) -> int:
        t = a
        acc = a
        for _ in range(self.f - 1):
            t = _res_poly_mul(t, t, self.modulus)
            acc = tuple(x ^ y for x, y in zip(acc, t))
        # absolute trace lands in F_2 = constant coordinate
        assert all(c == 0 for c in acc[1:]), "trace not rational"
        return acc[0]

    def _find_rho(self) -> FieldElt:
        for bits in itertools.product((0, 1), repeat=self.f):
            if any(bits) and self._res_trace(bits) == 1:
                return self.elt_from_coeffs(bits)
        raise FieldError("no residue of trace 1")  # unreachable: trace is onto

    # ------------------------------------------------------------------
    # Square-class tables
    # ------------------------------------------------------------------
    def _build_class_tables(self) -> None:
        f = self.f
        units8 = [u for u in itertools.product(range(8), repeat=f) if any(c % 2 for c in u)]
        squares8 = sorted({self._mul_mod8(u, u) for u in units8})
        self._squares8 = set(squares8)

        canon: dict = {}
        for u in units8:
            if u in canon:
                continue
            orbit = [self._mul_mod8(u, s) for s in squares8]
            key = min(orbit)
            for w in orbit:
                canon[w] = key
        self._canon_unit = canon
        unit_keys = sorted(set(canon.values()))
        if len(unit_keys) != 1 << (f + 1):
            raise FieldError("unit square-class count mismatch")
        self._unit_keys = unit_keys
        self._ukey_index = {k: i for i, k in enumerate(unit_keys)}
        nu = len(unit_keys)

        self.square_classes: list[SquareClass] = []
        self.class_reps: list[FieldElt] = []
        for p in (0, 1):
            for i, key in enumerate(unit_keys):
                idx = p * nu + i
                self.square_classes.append(SquareClass(p, key, idx))
                self.class_reps.append(self.elt_from_coeffs(key).shift(p))
        self._nu = nu

        umul = [[0] * nu for _ in range(nu)]
        for i, a in enumerate(unit_keys):
            for j, b in enumerate(unit_keys):
                umul[i][j] = self._ukey_index[canon[self._mul_mod8(a, b)]]
        n = 2 * nu
        self.class_mul = [[0] * n for _ in range(n)]
        for c in range(n):
            for d in range(n):
                p = (c // nu) ^ (d // nu)
                self.class_mul[c][d] = p * nu + umul[c % nu][d % nu]

        one_key = self._canon_unit[(1,) + (0,) * (f - 1)]
        self.one_class = self.square_classes[self._ukey_index[one_key]]
        self.two_class = self.square_classes[nu + self._ukey_index[one_key]]
        neg_key = self._canon_unit[tuple(c % 8 for c in (-1,) + (0,) * (f - 1))]
        self.neg_class = self.square_classes[self._ukey_index[neg_key]]
        delta_key = self._canon_unit[self.delta.residue(3)]
        self.delta_class = self.square_classes[self._ukey_index[delta_key]]
        if self.delta_class == self.one_class:
            raise FieldError("Delta is a square; residue trace of rho must be 1")

        # Quadratic defect exponents per unit class: 0 -> inf, Delta -> 2, rest -> 1.
        self.defect_exp = []
        for i in range(nu):
            if i == self.one_class.index:
                self.defect_exp.append(INF)
            elif i == self.delta_class.index:
                self.defect_exp.append(2)
            else:
                self.defect_exp.append(1)

    def class_of(self, x: FieldElt) -> SquareClass:
        if x.is_zero:
            raise FieldError("zero has no square class")
        v = min(_v2(c) for c in x.coeffs if c)
        unit = tuple((c >> v) % 8 for c in x.coeffs)
        idx = self._ukey_index[self._canon_unit[unit]]
        parity = (v - x.den) % 2
        return self.square_classes[parity * self._nu + idx]

    def class_mul2(self, a: SquareClass, b: SquareClass) -> SquareClass:
        return self.square_classes[self.class_mul[a.index][b.index]]

    def class_neg(self, a: SquareClass) -> SquareClass:
        return self.square_classes[self.class_mul[a.index][self.neg_class.index]]

    def class_two_pow(self, i: int) -> SquareClass:
        return self.two_class if i % 2 else self.one_class

    def unit_classes(self) -> list[SquareClass]:
        return self.square_classes[: self._nu]

    # ------------------------------------------------------------------
    # Hilbert symbol table
    # ------------------------------------------------------------------
    def _squares_mod32(self) -> frozenset:
        """All residues s^2 mod 32 for s in O (one sweep, shared by all classes)."""
        if not hasattr(self, "_sq32"):
            got = set()
            for s in itertools.product(range(16), repeat=self.f):
                got.add(tuple(c % 32 for c in self._poly_mul(s, s)))
            self._sq32 = frozenset(got)
        return self._sq32

    def _norm_classes(self, a_cls: SquareClass) -> frozenset:
        """Square classes of nonzero values of z^2 - a x^2 (a a non-square unit).

        Sweeping s over O mod 16 captures every class of 1 - a s^2 with
        s integral (the quadratic defect bounds the cancellation by 2^2,
        and s mod 16 pins 1 - a s^2 mod 32).  Values with s outside O
        contribute class(-a) times a class of 1 - t with v(t) >= 2 even,
        all of which already occur in the integral sweep.
        """
        a = self.class_reps[a_cls.index].coeffs
        got = set()
        one = (1,) + (0,) * (self.f - 1)
        for t in self._squares_mod32():
            at = self._poly_mul(a, t)
            w = tuple((o - c) % 32 for o, c in zip(one, at))
            if all(c == 0 for c in w):
                raise FieldError("norm sweep hit zero; class is a square")
            v = min(_v2(c) for c in w if c)
            if v > 2:
                raise FieldError("quadratic defect bound violated in norm sweep")
            unit = tuple((c >> v) % 8 for c in w)
            got.add((v % 2) * self._nu + self._ukey_index[self._canon_unit[unit]])
        neg_a = self.class_neg(a_cls)
        for extra in (self.one_class, self.delta_class):
            got.add(self.class_mul[neg_a.index][extra.index])
        got.add(neg_a.index)
        return frozenset(got)

    def _build_hilbert_table(self) -> None:
        nu, f = self._nu, self.f
        n = 2 * nu

        # F_2 basis of F*/F*^2: [2, Delta, c_1, ..., c_f].
        basis = [self.two_class.index, self.delta_class.index]
        span = {self.one_class.index}
        for g in basis:
            span |= {self.class_mul[g][s] for s in span}
        for c in range(nu):
            if c not in span:
                basis.append(c)
                span |= {self.class_mul[c][s] for s in span}
        if len(basis) != f + 2 or len(span) != n:
            raise FieldError("square-class basis construction failed")

        coords: dict[int, tuple] = {}
        for bits in itertools.product((0, 1), repeat=len(basis)):
            c = self.one_class.index
            for b, g in zip(bits, basis):
                if b:
                    c = self.class_mul[c][g]
            coords[c] = bits
        if len(coords) != n:
            raise FieldError("square-class basis is not independent")
        self._class_coords = coords

        norm_sets = {c: self._norm_classes(self.square_classes[c]) for c in basis[2:]}
        neg = self.neg_class.index
        if neg not in norm_sets:
            norm_sets[neg] = self._norm_classes(self.neg_class)
        for s in norm_sets.values():
            if len(s) != 1 << (f + 1):
                raise FieldError("norm group has wrong index")

        m = len(basis)
        M = [[0] * m for _ in range(m)]

        def parity(cidx: int) -> int:
            return cidx // nu

        for i in range(m):
            for j in range(m):
                gi, gj = basis[i], basis[j]
                if gi == self.delta_class.index or gj == self.delta_class.index:
                    other = gj if gi == self.delta_class.index else gi
                    M[i][j] = parity(other)
                elif i >= 2 and j >= 2:
                    M[i][j] = 0 if gj in norm_sets[gi] else 1
                elif i >= 2 and gj == self.two_class.index:
                    M[i][j] = 0 if self.two_class.index in norm_sets[gi] else 1
                elif j >= 2 and gi == self.two_class.index:
                    M[i][j] = 0 if self.two_class.index in norm_sets[gj] else 1
        # (2,2) = (2,-1), resolved through the coordinates of -1 (a unit class).
        neg_coords = coords[neg]
        if neg_coords[0]:
            raise FieldError("-1 decomposed with a uniformizer component")
        M[0][0] = sum(neg_coords[j] * M[0][j] for j in range(m)) % 2

        for i in range(m):
            for j in range(m):
                if M[i][j] != M[j][i]:
                    raise FieldError("Hilbert pairing is not symmetric")

        self.hilb = [[0] * n for _ in range(n)]
        for c in range(n):
            xc = coords[c]
            row = self.hilb[c]
            for d in range(n):
                xd = coords[d]
                acc = 0
                for i in range(m):
                    if xc[i]:
                        for j in range(m):
                            if xd[j]:
                                acc ^= M[i][j]
                row[d] = -1 if acc else 1

    def hilbert_cls(self, a: SquareClass, b: SquareClass) -> int:
        return self.hilb[a.index][b.index]

    def _validate_tables(self) -> None:
        n = 2 * self._nu
        neg = self.neg_class.index
        delta = self.delta_class.index
        for c in range(n):
            if self.hilb[c][self.class_mul[c][neg]] != 1:
                raise FieldError("Hilbert identity (a,-a)=+1 failed")
            if self.hilb[delta][c] != (-1 if c >= self._nu else 1):
                raise FieldError("Hilbert rule (Delta,w)=(-1)^v(w) failed")
            if self.hilb[c][self.one_class.index] != 1:
                raise FieldError("Hilbert identity (a,1)=+1 failed")
            for d in range(n):
                if self.hilb[c][d] != self.hilb[d][c]:
                    raise FieldError("Hilbert table asymmetry")

    def __repr__(self) -> str:
        return f"FieldCfg(f={self.f}, precision={self.precision})"


# ----------------------------------------------------------------------
# Public operations
# ----------------------------------------------------------------------
def make_field(f: int, precision: int = 12) -> FieldCfg:
    """Construct the unramified extension of Q_2 of residue degree f."""
    return FieldCfg(f, precision)


def valuation(x: FieldElt) -> int | float:
    """Normalized valuation with v(2) = 1; v(0) = +inf."""
    return x.valuation()


def is_square(x: FieldElt) -> bool:
    """Membership in F*^2; decided by valuation parity plus mod-8 residue."""
    if x.is_zero:
        raise FieldError("is_square is undefined at zero")
    return square_class(x) == x.cfg.one_class


def square_class(x: FieldElt) -> SquareClass:
    if x.is_zero:
        raise FieldError("zero has no square class")
    return x.cfg.class_of(x)


def quadratic_defect(u: FieldElt) -> IdealExp:
    """Defect of a unit: 0 for squares, 4O for the Delta class, else 2O."""
    if u.is_zero or u.valuation() != 0:
        raise FieldError("quadratic_defect expects a unit")
    cls = u.cfg.class_of(u)
    return IdealExp(u.cfg.defect_exp[cls.index])


def hilbert(a: FieldElt, b: FieldElt) -> int:
    """Hilbert symbol (a, b)_F in {+1, -1}."""
    if a.is_zero or b.is_zero:
        raise FieldError("hilbert symbol needs nonzero arguments")
    cfg = a.cfg
    return cfg.hilbert_cls(cfg.class_of(a), cfg.class_of(b))


def square_class_reps(cfg: FieldCfg) -> list[tuple[SquareClass, FieldElt]]:
    """All 2^(f+2) square classes with one representative element each."""
    return list(zip(cfg.square_classes, cfg.class_reps))


# ----------------------------------------------------------------------
# Element text format: "c0,c1,...,c{f-1}" with optional "/2^k" suffix.
# ----------------------------------------------------------------------
def parse_elt(cfg: FieldCfg, text) -> FieldElt:
    if isinstance(text, FieldElt):
        return text
    if isinstance(text, int):
        return cfg.elt(text)
    if isinstance(text, float):
        num, den = text.as_integer_ratio()
        k = den.bit_length() - 1
        if den != 1 << k:
            raise FieldError(f"non-dyadic numeric literal {text!r}")
        return cfg.elt(num).shift(-k)
    if not isinstance(text, str):
        raise FieldError(f"cannot parse element from {type(text).__name__}")
    body, den = text.strip(), 0
    if "/" in body:
        body, dpart = body.split("/", 1)
        dpart = dpart.strip()
        if not dpart.startswith("2^"):
            raise FieldError(f"bad denominator {dpart!r}; expected 2^k")
        den = int(dpart[2:])
        if den < 0:
            raise FieldError("denominator exponent must be >= 0")
    parts = [p.strip() for p in body.split(",")]
    if len(parts) == 1 and cfg.f > 1:
        parts = parts + ["0"] * (cfg.f - 1)
    if len(parts) != cfg.f:
        raise FieldError(f"expected {cfg.f} coordinates in {text!r}")
    try:
        coeffs = [int(p) for p in parts]
    except ValueError as exc:
        raise FieldError(f"bad coordinate in {text!r}") from exc
    return cfg.elt_from_coeffs(coeffs, den)
