"""Theta characteristics and the mod-2 symplectic machinery.

A level-n characteristic is a pair of integer vectors (a, b) mod n encoding
(delta, eps) = (a/n, b/n) in (1/n)Z^g / Z^g.  For n = 2 a characteristic is
identified with a vector of F_2^{2g} (first g bits = a, last g bits = b),
which carries the standard symplectic pairing and the quadratic form
sum_i x_i x_{g+i}.  Sp(2g, F_2) acts on half-integer characteristics by an
affine formula; orbits are computed by closure over a hard-coded generator
set for g <= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

EVEN = "even"
ODD = "odd"
ISOTROPIC = "isotropic"
ANISOTROPIC = "anisotropic"


@dataclass(frozen=True)
class Characteristic:
    """Level-n theta characteristic (a/n, b/n)."""

    g: int
    n: int
    a: tuple
    b: tuple

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("g must be >= 1")
        if self.n < 2:
            raise ValueError("level n must be >= 2")
        if len(self.a) != self.g or len(self.b) != self.g:
            raise ValueError("characteristic vectors must have length g")
        object.__setattr__(self, "a", tuple(int(x) % self.n for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) % self.n for x in self.b))

    @property
    def delta(self):
        return np.array(self.a, dtype=float) / self.n

    @property
    def eps(self):
        return np.array(self.b, dtype=float) / self.n

    def key(self):
        """Compact string key 'a|b', stable across runs (JSON friendly)."""
        return "".join(map(str, self.a)) + "|" + "".join(map(str, self.b))


@dataclass(frozen=True)
class F2Vector:
    """Point of F_2^{2g}: bits = a ++ b for a half-integer characteristic."""

    g: int
    bits: tuple

    def __post_init__(self):
        if len(self.bits) != 2 * self.g:
            raise ValueError("bit vector must have length 2g")
        object.__setattr__(self, "bits", tuple(int(x) % 2 for x in self.bits))

    @property
    def a(self):
        return self.bits[: self.g]

    @property
    def b(self):
        return self.bits[self.g :]

    @classmethod
    def from_characteristic(cls, c: Characteristic) -> "F2Vector":
        if c.n != 2:
            raise ValueError("only level-2 characteristics live in F_2^{2g}")
        return cls(c.g, c.a + c.b)

    def to_characteristic(self) -> Characteristic:
        return Characteristic(self.g, 2, self.a, self.b)

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.g != other.g:
            raise ValueError("mismatched g")
        return F2Vector(self.g, tuple((x + y) % 2 for x, y in zip(self.bits, other.bits)))

    def key(self):
        return "".join(map(str, self.bits))


def enumerate_characteristics(g: int, n: int):
    """All n^{2g} characteristics, lexicographic on a||b (a most significant)."""
    if g < 1 or n < 2:
        raise ValueError("need g >= 1 and n >= 2")
    out = []
    for ab in product(range(n), repeat=2 * g):
        out.append(Characteristic(g, n, ab[:g], ab[g:]))
    return out


def parity(c: Characteristic) -> str:
    """Parity of a half-integer characteristic: odd iff sum a_i b_i is odd."""
    if c.n != 2:
        raise ValueError("parity is defined for level n = 2 only")
    return ODD if sum(x * y for x, y in zip(c.a, c.b)) % 2 else EVEN


def count_parity(g: int):
    """(even, odd) counts: (2^{g-1}(2^g+1), 2^{g-1}(2^g-1)).

    For small g the closed form is cross-checked against a direct tally.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    even = 2 ** (g - 1) * (2**g + 1)
    odd = 2 ** (g - 1) * (2**g - 1)
    if g <= 8:
        tally = sum(1 for c in enumerate_characteristics(g, 2) if parity(c) == ODD)
        if tally != odd:
            raise AssertionError("parity tally disagrees with closed form")
    return even, odd


def symplectic_pairing(m: F2Vector, n: F2Vector) -> int:
    """Standard symplectic form sum_i (m_i n_{g+i} + n_i m_{g+i}) mod 2."""
    if m.g != n.g:
        raise ValueError("mismatched g")
    g = m.g
    return sum(m.bits[i] * n.bits[g + i] + n.bits[i] * m.bits[g + i] for i in range(g)) % 2


def quadratic_class(m: F2Vector) -> str:
    """Isotropy for the quadratic form sum_i x_i x_{g+i}; matches parity."""
    g = m.g
    return ANISOTROPIC if sum(m.bits[i] * m.bits[g + i] for i in range(g)) % 2 else ISOTROPIC


def canonical_f2_order(g: int):
    """Index order used by all matrices: isotropic block first, each block lex."""
    vecs = [F2Vector(g, bits) for bits in product((0, 1), repeat=2 * g)]
    iso = [v for v in vecs if quadratic_class(v) == ISOTROPIC]
    aniso = [v for v in vecs if quadratic_class(v) == ANISOTROPIC]
    return iso + aniso


def isotropic_vectors(g: int):
    return [v for v in canonical_f2_order(g) if quadratic_class(v) == ISOTROPIC]


def anisotropic_vectors(g: int):
    return [v for v in canonical_f2_order(g) if quadratic_class(v) == ANISOTROPIC]


def _f2(mat) -> np.ndarray:
    return np.asarray(mat, dtype=np.int64) % 2


@dataclass(frozen=True)
class SymplecticMap:
    """Element of Sp(2g, F_2) given by g x g blocks [[a, b], [c, d]]."""

    g: int
    a: tuple
    b: tuple
    c: tuple
    d: tuple

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            blk = _f2(getattr(self, name))
            if blk.shape != (self.g, self.g):
                raise ValueError(f"block {name} must be {self.g}x{self.g}")
            object.__setattr__(self, name, tuple(tuple(int(x) for x in row) for row in blk))
        m = self.matrix()
        j = np.zeros((2 * self.g, 2 * self.g), dtype=np.int64)
        j[: self.g, self.g :] = np.eye(self.g, dtype=np.int64)
        j[self.g :, : self.g] = np.eye(self.g, dtype=np.int64)
        if not np.array_equal((m.T @ j @ m) % 2, j):
            raise ValueError("matrix does not preserve the symplectic form mod 2")

    def matrix(self) -> np.ndarray:
        top = np.hstack([_f2(self.a), _f2(self.b)])
        bot = np.hstack([_f2(self.c), _f2(self.d)])
        return np.vstack([top, bot])

    @classmethod
    def from_matrix(cls, m) -> "SymplecticMap":
        m = _f2(m)
        g = m.shape[0] // 2
        return cls(g, m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:])

    @classmethod
    def identity(cls, g: int) -> "SymplecticMap":
        eye = np.eye(g, dtype=np.int64)
        zero = np.zeros((g, g), dtype=np.int64)
        return cls(g, eye, zero, zero, eye)

    def __matmul__(self, other: "SymplecticMap") -> "SymplecticMap":
        return SymplecticMap.from_matrix(self.matrix() @ other.matrix())


def act(gamma: SymplecticMap, c: Characteristic) -> Characteristic:
    """Affine Sp(2g, F_2) action on half-integer characteristics.

    gamma.[delta; eps] = (d, -c; -b, a)(delta; eps) + (diag(c d^t); diag(a b^t)),
    computed on the F_2 representatives (a, b) with all arithmetic mod 2.
    The diag(c d^t) form of the inhomogeneous term is the one that makes
    this a genuine left action (the transposed variant anti-composes).
    """
    if c.n != 2:
        raise ValueError("the symplectic action is implemented at level 2")
    if gamma.g != c.g:
        raise ValueError("mismatched g")
    a, b, cc, d = (_f2(gamma.a), _f2(gamma.b), _f2(gamma.c), _f2(gamma.d))
    da = np.array(c.a, dtype=np.int64)
    db = np.array(c.b, dtype=np.int64)
    new_a = (d @ da + cc @ db + np.diag(cc @ d.T)) % 2
    new_b = (b @ da + a @ db + np.diag(a @ b.T)) % 2
    return Characteristic(c.g, 2, tuple(new_a), tuple(new_b))


def symplectic_generators(g: int):
    """Generator list for Sp(2g, F_2): symplectic transvection-type elements.

    Upper/lower unipotent blocks for a basis of symmetric matrices, the Weyl
    swap, and GL(g, 2) elementary transvections embedded diagonally.
    """
    if g not in (1, 2, 3):
        raise ValueError("generators are hard-coded for g in {1, 2, 3}")
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    gens = []
    sym_basis = []
    for i in range(g):
        e = np.zeros((g, g), dtype=np.int64)
        e[i, i] = 1
        sym_basis.append(e)
    for i in range(g):
        for j in range(i + 1, g):
            e = np.zeros((g, g), dtype=np.int64)
            e[i, j] = e[j, i] = 1
            sym_basis.append(e)
    for s in sym_basis:
        gens.append(SymplecticMap(g, eye, s, zero, eye))
        gens.append(SymplecticMap(g, eye, zero, s, eye))
    gens.append(SymplecticMap(g, zero, eye, eye, zero))
    for i in range(g):
        for j in range(g):
            if i == j:
                continue
            u = eye.copy()
            u[i, j] = 1
            gens.append(SymplecticMap(g, u, zero, zero, u.T))
    return gens


def orbits(g: int, tuples: int = 1):
    """Orbit partition under the generated group; g <= 3 only.

    tuples=1 partitions single level-2 characteristics; tuples=2 partitions
    ordered pairs of distinct same-parity characteristics and reports whether
    each parity class of pairs forms a single orbit.
    """
    if g not in (1, 2, 3):
        raise ValueError("orbit computation supported for g in {1, 2, 3} only")
    if tuples not in (1, 2):
        raise ValueError("tuples must be 1 or 2")
    gens = symplectic_generators(g)
    chars = enumerate_characteristics(g, 2)

    if tuples == 1:
        points = list(chars)

        def move(gamma, p):
            return act(gamma, p)

        def keyf(p):
            return p.key()

    else:
        points = [
            (x, y)
            for x in chars
            for y in chars
            if x != y and parity(x) == parity(y)
        ]

        def move(gamma, p):
            return (act(gamma, p[0]), act(gamma, p[1]))

        def keyf(p):
            return p[0].key() + "," + p[1].key()

    seen: set = set()
    orbit_list = []
    for start in points:
        k0 = keyf(start)
        if k0 in seen:
            continue
        frontier = [start]
        seen.add(k0)
        orb = [start]
        while frontier:
            nxt = []
            for p in frontier:
                for gamma in gens:
                    q = move(gamma, p)
                    kq = keyf(q)
                    if kq not in seen:
                        seen.add(kq)
                        orb.append(q)
                        nxt.append(q)
            frontier = nxt
        orbit_list.append(sorted(keyf(p) for p in orb))
    orbit_list.sort(key=lambda o: (len(o), o[0]))

    report = {
        "g": g,
        "tuples": tuples,
        "orbit_sizes": [len(o) for o in orbit_list],
        "orbits": orbit_list,
    }
    even, odd = count_parity(g)
    if tuples == 1:
        report["parity_classes_single_orbits"] = sorted(
            len(o) for o in orbit_list
        ) == sorted([even, odd])
    else:
        # an orbit of pairs sits inside one parity class; a class is a single
        # orbit iff some orbit exhausts it
        sizes = [len(o) for o in orbit_list]
        report["even_pairs_single_orbit"] = even * (even - 1) in sizes
        report["odd_pairs_single_orbit"] = odd <= 1 or odd * (odd - 1) in sizes
    return report
