"""Principal-submatrix rank search on B = N N^t.

The target quantity is the smallest order k admitting a principal submatrix
S with rank(S) <= k - 2^g.  At g = 2 the 2^10 masks are scanned exhaustively
with exact integer ranks.  At g = 3 the strictly-even submatrix gives a
certified witness of order 27 and rank 19; orders <= 7 are certified
infeasible by strict diagonal dominance; the remaining orders are probed by
seeded randomized search.  The probe screens candidates with exact modular
arithmetic (rank mod a 31-bit prime, a lower bound on the rational rank, so
no true witness can be screened out) and confirms any hit with fraction-free
elimination over the integers; floating point is never involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .characteristics import act, isotropic_vectors, symplectic_generators
from .errors import VerificationError
from .matrices import build_B, build_Bk, exact_det, exact_rank

MOD_P = 2147483647  # 2^31 - 1; products of residues stay inside int64


@dataclass(frozen=True)
class SubsetMask:
    """Subset of the K_g^+ index set selecting a principal submatrix."""

    g: int
    indices: tuple

    def __post_init__(self):
        kp = 2 ** (self.g - 1) * (2**self.g + 1)
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        if idx and not (0 <= idx[0] and idx[-1] < kp):
            raise ValueError(f"indices must lie in [0, {kp})")
        object.__setattr__(self, "indices", idx)

    @property
    def order(self):
        return len(self.indices)


@dataclass
class SearchReport:
    g: int
    exhaustive: bool
    strategy: str
    h0: int = None
    h0_upper: int = None
    witnesses: list = field(default_factory=list)
    min_rank_by_order: dict = field(default_factory=dict)
    orders_certified_infeasible: list = field(default_factory=list)
    seed: int = None
    budget: int = None
    budget_used: int = 0
    counterexample_found: bool = False
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "g": self.g,
            "exhaustive": self.exhaustive,
            "strategy": self.strategy,
            "h0": self.h0,
            "h0_upper": self.h0_upper,
            "witnesses": [list(w) for w in self.witnesses],
            "min_rank_by_order": {str(k): v for k, v in sorted(self.min_rank_by_order.items())},
            "orders_certified_infeasible": self.orders_certified_infeasible,
            "seed": self.seed,
            "budget": self.budget,
            "budget_used": self.budget_used,
            "counterexample_found": self.counterexample_found,
            "notes": self.notes,
        }


def principal_rank(b, mask) -> int:
    """Exact rank of the principal submatrix selected by the mask."""
    idx = mask.indices if isinstance(mask, SubsetMask) else tuple(sorted(mask))
    if not idx:
        return 0
    data = b.data if hasattr(b, "data") else b
    sub = [[data[i][j] for j in idx] for i in idx]
    return exact_rank(sub)


def _is_positive_definite(sub) -> bool:
    """Exact Sylvester test on a symmetric integer matrix."""
    n = len(sub)
    return all(exact_det([row[: k + 1] for row in sub[: k + 1]]) > 0 for k in range(n))


def h0_exhaustive(g: int = 2) -> SearchReport:
    """Scan every principal submatrix of B at g = 2 with exact ranks."""
    if g != 2:
        raise ValueError("exhaustive scan supported at g = 2 only")
    b = build_B(g)
    kp = b.rows
    need = 2**g
    report = SearchReport(g=g, exhaustive=True, strategy="exhaustive-bitmask-scan")
    min_rank = {}
    witnesses = []
    h0 = None
    for bits in range(1, 1 << kp):
        idx = tuple(i for i in range(kp) if bits >> i & 1)
        k = len(idx)
        r = principal_rank(b, idx)
        if k not in min_rank or r < min_rank[k]:
            min_rank[k] = r
        if r <= k - need:
            if h0 is None or k < h0:
                h0 = k
                witnesses = [idx]
            elif k == h0:
                witnesses.append(idx)
    report.min_rank_by_order = min_rank
    report.h0 = h0
    report.h0_upper = h0
    report.witnesses = sorted(witnesses)

    # positive definiteness of every principal submatrix of order <= 2^g - 1
    pd_cap = need - 1
    for k in range(1, pd_cap + 1):
        for idx in combinations(range(kp), k):
            sub = [[b.data[i][j] for j in idx] for i in idx]
            if not _is_positive_definite(sub):
                raise VerificationError(
                    f"principal submatrix {idx} of order {k} is not positive definite"
                )
    report.orders_certified_infeasible = list(range(1, pd_cap + 1))
    report.notes.append(
        f"all principal submatrices of order <= {pd_cap} are positive definite (exact minors)"
    )
    return report


def batched_rank_mod_p(mats: np.ndarray) -> np.ndarray:
    """Rank mod 2^31 - 1 of a batch of integer matrices, shape (B, k, k).

    Division-free row elimination: rows below the pivot are replaced by
    pivot*row - entry*pivot_row, which scales by a nonzero residue and
    leaves the rank unchanged.  Always a lower bound on the rational rank.
    """
    a = np.ascontiguousarray(mats % MOD_P, dtype=np.int64)
    nb, k, _ = a.shape
    ranks = np.zeros(nb, dtype=np.int64)
    rowidx = np.arange(k)
    uniform = True
    for col in range(k):
        sub = a[:, :, col]
        cand = np.where((rowidx[None, :] >= ranks[:, None]) & (sub != 0), rowidx[None, :], k)
        piv = cand.min(axis=1)
        have = piv < k
        if not have.any():
            continue
        if uniform and have.all():
            # common case: every matrix pivots, at a shared target row
            rr = int(ranks[0])
            need_swap = np.nonzero(piv != rr)[0]
            for i in need_swap:
                a[i, [rr, piv[i]]] = a[i, [piv[i], rr]]
            pivrow = a[:, rr, col:].copy()
            pivval = a[:, rr, col]
            if rr + 1 < k:
                block = a[:, rr + 1 :, col:]
                fac = a[:, rr + 1 :, col, None]
                block[...] = (block * pivval[:, None, None] - fac * pivrow[:, None, :]) % MOD_P
            ranks += 1
            continue
        uniform = False
        sel = np.nonzero(have)[0]
        r = ranks[sel]
        p = piv[sel]
        swap = a[sel, p].copy()
        a[sel, p] = a[sel, r]
        a[sel, r] = swap
        pivval = a[sel, r, col]
        fac = a[sel, :, col]
        upd = (a[sel] * pivval[:, None, None] - fac[:, :, None] * swap[:, None, :]) % MOD_P
        below = rowidx[None, :] > r[:, None]
        a[sel] = np.where(below[:, :, None], upd, a[sel])
        ranks[sel] += 1
    return ranks


def _perm_action_on_kplus(g: int):
    """Permutations of the K_g^+ index set induced by the symplectic generators."""
    iso = isotropic_vectors(g)
    pos = {v.bits: i for i, v in enumerate(iso)}
    perms = []
    for gamma in symplectic_generators(g):
        perm = [0] * len(iso)
        for i, v in enumerate(iso):
            w = act(gamma, v.to_characteristic())
            perm[i] = pos[w.a + w.b]
        perms.append(tuple(perm))
    return perms


def canonicalize_mask(indices, perms):
    """Greedy lexicographic minimization of a mask under generator
    permutations (a partial canonical form, used only for deduplication)."""
    best = tuple(sorted(indices))
    improved = True
    while improved:
        improved = False
        for perm in perms:
            cand = tuple(sorted(perm[i] for i in best))
            if cand < best:
                best = cand
                improved = True
    return best


def h0_probe(g: int = 3, budget: int = 1_000_000, seed: int = 0, orbit_reduction: bool = True) -> SearchReport:
    """Randomized refutation probe at g = 3.

    Establishes the certified upper bound (order-27 witness of rank 19),
    certifies orders <= 7 infeasible, then spends the budget looking for a
    witness of smaller order.  Absence of a find is reported as such, never
    as a proof.
    """
    if g != 3:
        raise ValueError("the randomized probe is wired for g = 3")
    if budget < 1:
        raise ValueError("budget must be positive")
    b = build_B(g)
    kp = b.rows  # 36
    need = 2**g  # 8
    report = SearchReport(
        g=g,
        exhaustive=False,
        strategy="uniform-sampling+greedy-swaps",
        seed=int(seed),
        budget=int(budget),
    )

    bk, sel = build_Bk(g)
    wit_rank = principal_rank(b, sel)
    if wit_rank > len(sel) - need:
        raise VerificationError("strictly-even witness failed its rank certificate")
    report.h0_upper = len(sel)
    report.witnesses = [tuple(sel)]
    report.min_rank_by_order[len(sel)] = wit_rank
    report.notes.append(
        f"certified witness: order {len(sel)}, exact rank {wit_rank}, slack {len(sel) - need - wit_rank}"
    )

    # orders <= 2^g - 1: diag 28 dominates (order-1)*4, hence positive definite
    offmax = max(
        abs(b.data[i][j]) for i in range(kp) for j in range(kp) if i != j
    )
    diag = min(b.data[i][i] for i in range(kp))
    # strict dominance at order s needs (s-1)*offmax < diag
    cap = (diag - 1) // offmax + 1
    if cap < need - 1:
        raise VerificationError("diagonal dominance fails to certify small orders")
    report.orders_certified_infeasible = list(range(1, need))
    report.notes.append(
        f"orders <= {need - 1} infeasible: strict diagonal dominance "
        f"({diag} > {need - 2} * {offmax}) forces positive definiteness"
    )

    rng = np.random.default_rng(seed)
    bmat = np.array(b.data, dtype=np.int64)
    orders = np.arange(need, report.h0_upper)
    used = 0
    best = {}  # order -> (slack, mask)
    perms = _perm_action_on_kplus(g) if orbit_reduction else None
    seen = set()

    def eval_batch(masks):
        nonlocal used
        if not masks:
            return
        k = len(masks[0])
        idx = np.array(masks, dtype=np.int64)
        mats = bmat[idx[:, :, None], idx[:, None, :]]
        ranks = batched_rank_mod_p(mats)
        used += len(masks)
        for mask, r in zip(masks, ranks.tolist()):
            slack = r - (k - need)
            if k not in best or slack < best[k][0] or (slack == best[k][0] and mask < best[k][1]):
                best[k] = (slack, mask)
            if slack <= 0:
                confirm = principal_rank(b, mask)
                if confirm <= k - need:
                    report.counterexample_found = True
                    report.witnesses.append(tuple(mask))
                    report.h0_upper = min(report.h0_upper, k)
                    report.notes.append(
                        f"witness of order {k} found: exact rank {confirm}"
                    )

    # uniform phase: no canonicalization (dedup gain is nil against a mask
    # space orders of magnitude larger than the budget, and the greedy
    # minimization would dominate the runtime)
    sample_budget = int(budget * 0.8)
    batch = 4096
    while used < sample_budget:
        k = int(rng.choice(orders))
        count = min(batch, sample_budget - used)
        masks = [
            tuple(sorted(rng.choice(kp, size=k, replace=False).tolist()))
            for _ in range(count)
        ]
        eval_batch(masks)

    # greedy swap refinement from the most promising masks per order;
    # canonicalization dedups restart seeds that land in an explored orbit
    while used < budget and best:
        start_order = min(best, key=lambda k: (best[k][0], k))
        slack0, mask0 = best[start_order]
        if perms is not None:
            canon = canonicalize_mask(mask0, perms)
            if canon in seen:
                k = int(rng.choice(orders))
                masks = [
                    tuple(sorted(rng.choice(kp, size=k, replace=False).tolist()))
                    for _ in range(min(batch, budget - used))
                ]
                eval_batch(masks)
                continue
            seen.add(canon)
        improved = False
        current = list(mask0)
        inside = set(current)
        neighbors = []
        for pos in range(len(current)):
            for repl in range(kp):
                if repl in inside:
                    continue
                cand = sorted(current[:pos] + [repl] + current[pos + 1 :])
                neighbors.append(tuple(cand))
                if used + len(neighbors) >= budget:
                    break
            if used + len(neighbors) >= budget:
                break
        before = best.get(start_order, (10**9, ()))[0]
        eval_batch(neighbors)
        after = best.get(start_order, (10**9, ()))[0]
        improved = after < before
        if not improved:
            # plateau: random restart consumes budget through the sampler
            k = int(rng.choice(orders))
            masks = [
                tuple(sorted(rng.choice(kp, size=k, replace=False).tolist()))
                for _ in range(min(batch, budget - used))
            ]
            eval_batch(masks)

    report.budget_used = used
    for k, (slack, _mask) in sorted(best.items()):
        report.min_rank_by_order[k] = slack + (k - need)
    if not report.counterexample_found:
        report.notes.append(
            "no witness of order below the certified upper bound found within budget"
        )
    return report
