"""Numerical theta functions with rational characteristics.

theta[delta; eps](tau, z) = sum_m exp[pi i (m+delta)^t tau (m+delta)
                                     + 2 pi i (m+delta)^t (z+eps)]

summed over an integer box grown adaptively until a rigorous geometric
majorant of the tail drops below the requested tolerance.  Before summing,
z is reduced by quasi-periodicity (z = tau p + q with p, q shifted into a
half-open unit box) and the nonvanishing exponential factor is tracked, so
the returned value is theta at the original z.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .characteristics import (
    Characteristic,
    enumerate_characteristics,
    isotropic_vectors,
    parity,
)
from .errors import (
    AmbiguousVanishingError,
    RadiusCapError,
    ThetaLabError,
    VerificationError,
)
from .matrices import build_M, split_blocks

DEFAULT_TOL = 1e-12
RADIUS_CAP = 60
VANISH_REL = 1e-6
NONVANISH_REL = 1e-3
RANK_ZERO_REL = 1e-8
RANK_AMBIG_REL = 1e-4


def worker_count() -> int:
    """Worker cap from THETALAB_THREADS (>= 1); default 1."""
    try:
        return max(1, int(os.environ.get("THETALAB_THREADS", "1")))
    except ValueError:
        return 1


class PeriodMatrix:
    """Point of the Siegel upper-half space: symmetric tau with Im tau > 0."""

    SYMMETRY_TOL = 1e-12

    def __init__(self, mat):
        mat = np.asarray(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("tau must be a square matrix")
        if np.max(np.abs(mat - mat.T)) > self.SYMMETRY_TOL:
            raise ValueError("tau must be symmetric (entrywise 1e-12)")
        mat = (mat + mat.T) / 2
        try:
            np.linalg.cholesky(mat.imag)
        except np.linalg.LinAlgError:
            raise ValueError("Im tau must be positive definite") from None
        self.mat = mat
        self.g = mat.shape[0]
        self.lam_min = float(np.linalg.eigvalsh(mat.imag)[0])

    @property
    def re(self):
        return self.mat.real

    @property
    def im(self):
        return self.mat.imag

    def scaled(self, factor) -> "PeriodMatrix":
        return PeriodMatrix(factor * self.mat)

    def diagonal_blocks(self):
        """Index blocks of the exactly block-diagonal structure of tau."""
        g = self.g
        adj = (self.mat != 0) | np.eye(g, dtype=bool)
        blocks = []
        seen = [False] * g
        for i in range(g):
            if seen[i]:
                continue
            stack, comp = [i], []
            seen[i] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in range(g):
                    if not seen[w] and adj[v, w]:
                        seen[w] = True
                        stack.append(w)
            blocks.append(sorted(comp))
        return blocks

    def to_json(self):
        return {
            "g": self.g,
            "re": [[float(x) for x in row] for row in self.re],
            "im": [[float(x) for x in row] for row in self.im],
        }

    @classmethod
    def from_json(cls, obj) -> "PeriodMatrix":
        g = int(obj["g"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
        if re.shape != (g, g) or im.shape != (g, g):
            raise ValueError("re/im must be g x g row-major arrays")
        return cls(re + 1j * im)


def random_tau(g: int, rng) -> PeriodMatrix:
    """Reproducible generic tau: A + i(C^t C + I), A symmetric in [-1/2,1/2].

    C has 0.3-scaled gaussian entries.  Keeping Im tau close to the identity
    matters: a large imaginary part crushes the all-half-characteristic
    constants into the undecidable band of the vanishing threshold policy.
    """
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(rng)
    a = rng.uniform(-0.5, 0.5, size=(g, g))
    a = (a + a.T) / 2
    c = 0.3 * rng.standard_normal((g, g))
    b = c.T @ c + np.eye(g)
    return PeriodMatrix(a + 1j * b)


@dataclass
class ThetaValue:
    """Theta value with a rigorous truncation-error bound."""

    value: complex
    tail_bound: float
    radius_used: int


def _series_tail(lam: float, c: float, radius: int, g: int) -> float:
    """Majorant for the tail of the theta series outside the summation box.

    Terms with ||m - center||_inf = t >= radius+1 satisfy
    |term| <= exp(-pi lam (t - 1/2)^2 + 2 pi sqrt(g) (t + 1/2) c) and there
    are at most 2g(2t+1)^{g-1} of them per shell; the shell bounds are
    summed until their ratio certifies a geometric remainder.
    """
    total = 0.0
    t = radius + 1
    sg = math.sqrt(g)
    while True:
        logf = (
            math.log(2 * g)
            + (g - 1) * math.log(2 * t + 1)
            - math.pi * lam * (t - 0.5) ** 2
            + 2 * math.pi * sg * (t + 0.5) * c
        )
        f = math.exp(min(logf, 700.0))
        ratio = ((2 * t + 3) / (2 * t + 1)) ** (g - 1) * math.exp(
            min(-2 * math.pi * lam * t + 2 * math.pi * sg * c, 700.0)
        )
        if ratio < 0.5:
            total += f / (1 - ratio)
            return total
        total += f
        t += 1
        if t > radius + 100000:
            return math.inf


def theta(
    tau: PeriodMatrix,
    z,
    char: Characteristic,
    tol: float = DEFAULT_TOL,
    radius_cap: int = RADIUS_CAP,
) -> ThetaValue:
    """Evaluate theta[delta; eps](tau, z) with a certified truncation bound."""
    if char.g != tau.g:
        raise ValueError("characteristic and period matrix dimensions differ")
    if tol <= 0:
        raise ValueError("tol must be positive")
    g = tau.g
    z = np.asarray(z, dtype=complex).reshape(g)
    delta = char.delta
    eps = char.eps

    # quasi-periodic reduction: z = z_red + tau a + b with p, q in [-1/2, 1/2)
    p = np.linalg.solve(tau.im, z.imag)
    q = z.real - tau.re @ p
    a = np.floor(p + 0.5).astype(np.int64)
    b = np.floor(q + 0.5).astype(np.int64)
    z_red = z - tau.mat @ a - b
    factor = np.exp(
        -1j * math.pi * (a @ tau.mat @ a)
        - 2j * math.pi * (a @ (z_red + eps))
        + 2j * math.pi * (delta @ b)
    )
    if factor == 0:
        raise ThetaLabError("quasi-periodicity factor underflowed to zero")

    lam = tau.lam_min
    c = float(np.linalg.norm(z_red.imag))
    center = np.rint(-delta).astype(np.int64)

    radius = 6
    while True:
        tail = _series_tail(lam, c, radius, g)
        if tail * abs(factor) <= tol:
            break
        if radius >= radius_cap:
            raise RadiusCapError(
                f"tolerance {tol} unreachable within radius cap {radius_cap}"
            )
        radius = min(radius_cap, radius + max(4, radius // 2))

    axes = [np.arange(ci - radius, ci + radius + 1) for ci in center]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, g)
    u = grid + delta
    quad = np.einsum("ki,ij,kj->k", u, tau.mat, u)
    lin = u @ (z_red + eps)
    s = np.exp(1j * math.pi * quad + 2j * math.pi * lin).sum()
    return ThetaValue(complex(factor * s), float(tail * abs(factor)), radius)


def classify_magnitudes(mags):
    """Vanishing flags for a family of magnitudes under the threshold policy.

    vanishing if < 1e-6 * max, nonvanishing if > 1e-3 * max; anything in the
    band raises AmbiguousVanishingError listing the offending indices.
    """
    mags = np.asarray(mags, dtype=float)
    top = float(mags.max()) if mags.size else 0.0
    if top <= 0:
        raise ThetaLabError("all magnitudes vanish; cannot normalize the table")
    rel = mags / top
    band = np.nonzero((rel >= VANISH_REL) & (rel <= NONVANISH_REL))[0]
    if band.size:
        raise AmbiguousVanishingError(
            "magnitudes in the undecidable band "
            f"[{VANISH_REL:g}, {NONVANISH_REL:g}] x max at indices {band.tolist()}",
            offenders=band.tolist(),
        )
    return rel < VANISH_REL


@dataclass
class ConstantTable:
    """All level-n theta constants at tau with vanishing flags and margins."""

    tau: PeriodMatrix
    n: int
    chars: list
    values: np.ndarray
    tail_bounds: np.ndarray
    magnitudes: np.ndarray = field(init=False)
    max_magnitude: float = field(init=False)

    def __post_init__(self):
        self.magnitudes = np.abs(self.values)
        self.max_magnitude = float(self.magnitudes.max())
        if self.max_magnitude <= 0:
            raise ThetaLabError("constant table has no nonvanishing entry")

    @property
    def margins(self):
        return self.magnitudes / self.max_magnitude

    def vanishing_flags(self):
        try:
            return classify_magnitudes(self.magnitudes)
        except AmbiguousVanishingError as exc:
            names = [self.chars[i].key() for i in exc.offenders]
            raise AmbiguousVanishingError(
                f"undecidable theta constants at characteristics {names}",
                offenders=exc.offenders,
            ) from None

    def to_json(self):
        flags = self.vanishing_flags()
        return {
            "n": self.n,
            "g": self.tau.g,
            "entries": [
                {
                    "char": c.key(),
                    "value": [float(v.real), float(v.imag)],
                    "magnitude": float(m),
                    "margin": float(m / self.max_magnitude),
                    "vanishing": bool(f),
                }
                for c, v, m, f in zip(self.chars, self.values, self.magnitudes, flags)
            ],
        }


def _eval_many(tau, z, chars, tol):
    nworkers = worker_count()
    if nworkers > 1 and len(chars) > 8:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            vals = list(pool.map(lambda ch: theta(tau, z, ch, tol), chars))
    else:
        vals = [theta(tau, z, ch, tol) for ch in chars]
    return vals


def constant_table(tau: PeriodMatrix, n: int, tol: float = DEFAULT_TOL) -> ConstantTable:
    """Table of all n^{2g} theta constants theta[delta; eps](tau, 0)."""
    if n < 2:
        raise ValueError("level n must be >= 2")
    chars = enumerate_characteristics(tau.g, n)
    zero = np.zeros(tau.g)
    vals = _eval_many(tau, zero, chars, tol)
    return ConstantTable(
        tau,
        n,
        chars,
        np.array([v.value for v in vals]),
        np.array([v.tail_bound for v in vals]),
    )


def certified_diagonal_flags(tau: PeriodMatrix, n: int):
    """Exact vanishing flags for diagonal tau at level 2.

    For 1x1 blocks a level-2 constant vanishes iff the coordinate
    characteristic is odd, so for diagonal tau the product rule decides
    vanishing without thresholds: vanish iff some a_i b_i = 1.
    Returns None when the certified rule does not apply.
    """
    if n != 2:
        return None
    if any(len(blk) != 1 for blk in tau.diagonal_blocks()):
        return None
    chars = enumerate_characteristics(tau.g, 2)
    return np.array([any(x * y for x, y in zip(c.a, c.b)) for c in chars], dtype=bool)


@dataclass
class TorsionCount:
    """Theta(n) with the decision margins of the vanishing classification."""

    count: int
    n: int
    g: int
    min_nonvanishing_margin: float
    max_vanishing_margin: float
    certified: bool

    def to_json(self):
        return {
            "theta_n": self.count,
            "n": self.n,
            "g": self.g,
            "margins": {
                "min_nonvanishing": self.min_nonvanishing_margin,
                "max_vanishing": self.max_vanishing_margin,
            },
            "certified": self.certified,
        }


def count_torsion(tau: PeriodMatrix, n: int, tol: float = DEFAULT_TOL) -> TorsionCount:
    """Theta(n): number of vanishing level-n theta constants at tau."""
    table = constant_table(tau, n, tol)
    flags = table.vanishing_flags()
    certified = certified_diagonal_flags(tau, n)
    if certified is not None and not np.array_equal(flags, certified):
        raise VerificationError(
            "numerical vanishing flags disagree with the certified diagonal rule"
        )
    margins = table.margins
    nonvan = margins[~flags]
    van = margins[flags]
    return TorsionCount(
        count=int(flags.sum()),
        n=n,
        g=tau.g,
        min_nonvanishing_margin=float(nonvan.min()) if nonvan.size else math.inf,
        max_vanishing_margin=float(van.max()) if van.size else 0.0,
        certified=certified is not None,
    )


def m_count(tau: PeriodMatrix, y, tol: float = DEFAULT_TOL) -> int:
    """Number of half-integer characteristics with theta(tau, 2y) nonvanishing."""
    y = np.asarray(y, dtype=complex).reshape(tau.g)
    chars = enumerate_characteristics(tau.g, 2)
    vals = _eval_many(tau, 2 * y, chars, tol)
    flags = classify_magnitudes([abs(v.value) for v in vals])
    return int((~flags).sum())


def addition_residual(
    tau: PeriodMatrix, z, char: Characteristic, tol: float = DEFAULT_TOL
) -> float:
    """Normalized residual of the level-2 addition formula.

    theta[d;e](tau,0) theta[d;e](tau,2z)
      = sum_sigma (-1)^{<2e,2sigma>} theta[s;0](2tau,2z) theta[d+s;0](2tau,2z)
    with sigma running over half-integer vectors.
    """
    if char.n != 2:
        raise ValueError("the addition formula applies to half-integer characteristics")
    g = tau.g
    z = np.asarray(z, dtype=complex).reshape(g)
    tau2 = tau.scaled(2)
    lhs = theta(tau, np.zeros(g), char, tol).value * theta(tau, 2 * z, char, tol).value

    cache = {}
    for s in product((0, 1), repeat=g):
        cache[s] = theta(tau2, 2 * z, Characteristic(g, 2, s, (0,) * g), tol).value
    rhs = 0j
    for s in product((0, 1), repeat=g):
        sign = (-1) ** (sum(x * y for x, y in zip(char.b, s)) % 2)
        ds = tuple((x + y) % 2 for x, y in zip(char.a, s))
        rhs += sign * cache[s] * cache[ds]
    return abs(lhs - rhs) / (1 + max(abs(lhs), abs(rhs)))


def fay_relation_residual(
    tau: PeriodMatrix, z, column: int, tol: float = DEFAULT_TOL
) -> float:
    """Residual of sum_m v_m theta_m(tau,0)^2 theta_m(tau,2z)^2 over K_g^+,
    where v is the given column of the block N."""
    g = tau.g
    z = np.asarray(z, dtype=complex).reshape(g)
    m = build_M(g)
    _, _, n = split_blocks(m)
    if not (0 <= column < n.cols):
        raise ValueError(f"column must be in [0, {n.cols})")
    iso = isotropic_vectors(g)
    if n.row_labels != iso:
        raise VerificationError("N row labels do not match the canonical K+ order")
    terms = []
    for i, vec in enumerate(iso):
        v = n.entry(i, column)
        ch = vec.to_characteristic()
        t0 = theta(tau, np.zeros(g), ch, tol).value
        t2 = theta(tau, 2 * z, ch, tol).value
        terms.append(v * t0 * t0 * t2 * t2)
    total = sum(terms)
    return abs(total) / (1 + max(abs(t) for t in terms))


def _numerical_rank(matrix):
    """Numerical rank via SVD with the refusal band on singular values."""
    sv = np.linalg.svd(matrix, compute_uv=False)
    top = sv[0] if sv.size else 0.0
    if top <= 0:
        return 0
    rel = sv / top
    band = np.nonzero((rel >= RANK_ZERO_REL) & (rel <= RANK_AMBIG_REL))[0]
    if band.size:
        raise AmbiguousVanishingError(
            "singular values inside the rank-decision band "
            f"[{RANK_ZERO_REL:g}, {RANK_AMBIG_REL:g}]",
            offenders=band.tolist(),
        )
    return int((rel > RANK_AMBIG_REL).sum())


@dataclass
class QHProfile:
    """Per-coset numerical ranks of the twisted constant matrices."""

    n: int
    g: int
    ranks: list
    theta_n: int
    defect: int

    def to_json(self):
        return {
            "n": self.n,
            "g": self.g,
            "ranks": self.ranks,
            "rank_sum": sum(self.ranks),
            "theta_n": self.theta_n,
            "defect": self.defect,
        }


def qh_rank_profile(tau: PeriodMatrix, n: int, tol: float = DEFAULT_TOL) -> QHProfile:
    """Ranks of T_mu[delta, eps] = exp(2 pi i n delta^t eps) theta[delta; mu](tau, 0)
    for every mu, plus the identity defect n^{2g} - sum_mu rank - Theta(n)."""
    if n < 2:
        raise ValueError("level n must be >= 2")
    g = tau.g
    if g > 3:
        raise ValueError("qh_rank_profile supported for g <= 3")
    vecs = list(product(range(n), repeat=g))
    zero = np.zeros(g)
    # phase[d, e] = exp(2 pi i (a . e) / n) for delta = a/n, eps = e/n
    phases = np.exp(
        2j
        * math.pi
        / n
        * np.array([[sum(x * y for x, y in zip(d, e)) for e in vecs] for d in vecs])
    )
    ranks = []
    for mu in vecs:
        consts = np.array(
            [theta(tau, zero, Characteristic(g, n, d, mu), tol).value for d in vecs]
        )
        ranks.append(_numerical_rank(consts[:, None] * phases))
    theta_n = count_torsion(tau, n, tol).count
    defect = n ** (2 * g) - sum(ranks) - theta_n
    return QHProfile(n=n, g=g, ranks=ranks, theta_n=theta_n, defect=defect)
