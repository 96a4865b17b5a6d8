"""Block structure of exponent sequences, admissible involutions, GK types.

An involution pairs coordinates of a non-decreasing exponent sequence.
Admissibility constrains the pairing: at most two fixed points with
exponents of opposite parity, per-block multiplicity bounds, and a
min/max matching rule for cross-block pairs (which always join exponents
of equal parity).  Within each equivalence class under block-preserving
relabelling there is a unique standard representative.
"""

from __future__ import annotations

from dataclasses import dataclass

Involution = tuple[int, ...]  # sigma[i] = partner of i, 0-based, sigma o sigma = id


@dataclass(frozen=True)
class BlockStructure:
    """Maximal runs of equal exponents: sizes, prefix sums, values, index sets."""

    sizes: tuple[int, ...]
    starts: tuple[int, ...]  # 0-based start of each block
    values: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.sizes)

    def block_of(self, i: int) -> int:
        for s in range(self.r):
            if self.starts[s] <= i < self.starts[s] + self.sizes[s]:
                return s
        raise IndexError(i)

    def indices(self, s: int) -> range:
        return range(self.starts[s], self.starts[s] + self.sizes[s])


def blocks(exps) -> BlockStructure:
    exps = tuple(exps)
    if any(exps[i] > exps[i + 1] for i in range(len(exps) - 1)):
        raise ValueError("exponent sequence must be non-decreasing")
    sizes, starts, values = [], [], []
    i = 0
    while i < len(exps):
        j = i
        while j < len(exps) and exps[j] == exps[i]:
            j += 1
        sizes.append(j - i)
        starts.append(i)
        values.append(exps[i])
        i = j
    return BlockStructure(tuple(sizes), tuple(starts), tuple(values))


def _partition(exps, sigma: Involution):
    """Index sets: fixed points, raised side and lowered side of the pairing."""
    fixed = [i for i in range(len(exps)) if sigma[i] == i]
    plus = [i for i in range(len(exps)) if exps[i] > exps[sigma[i]]]
    minus = [i for i in range(len(exps)) if exps[i] < exps[sigma[i]]]
    return fixed, plus, minus


def is_involution(sigma: Involution) -> bool:
    n = len(sigma)
    return sorted(sigma) == list(range(n)) and all(sigma[sigma[i]] == i for i in range(n))


def is_admissible(exps, sigma: Involution) -> bool:
    """The three pairing constraints on an involution for ``exps``."""
    exps = tuple(exps)
    n = len(exps)
    if len(sigma) != n or not is_involution(sigma):
        return False
    bl = blocks(exps)
    fixed, plus, minus = _partition(exps, sigma)

    # (i) at most two fixed points, of distinct exponent parity, each maximal
    # among fixed-or-raised exponents of its parity
    if len(fixed) > 2:
        return False
    if len(fixed) == 2 and (exps[fixed[0]] - exps[fixed[1]]) % 2 == 0:
        return False
    for i in fixed:
        pool = [exps[j] for j in fixed + plus if (exps[j] - exps[i]) % 2 == 0]
        if exps[i] != max(pool):
            return False

    # (ii) per block: at most one raised index, at most one lowered-or-fixed
    for s in range(bl.r):
        idx = set(bl.indices(s))
        if len(idx & set(plus)) > 1:
            return False
        if len(idx & (set(minus) | set(fixed))) > 1:
            return False

    # (iii) cross-block pairs join nearest exponents of equal parity
    for i in minus:
        cands = [exps[j] for j in plus
                 if exps[j] > exps[i] and (exps[j] - exps[i]) % 2 == 0]
        if not cands or exps[sigma[i]] != min(cands):
            return False
    for i in plus:
        cands = [exps[j] for j in minus
                 if exps[j] < exps[i] and (exps[j] - exps[i]) % 2 == 0]
        if not cands or exps[sigma[i]] != max(cands):
            return False
    return True


def is_standard(exps, sigma: Involution) -> bool:
    """Admissible, with the normalized within-block layout: raised indices
    first in their block, lowered/fixed indices last, equal pairs adjacent."""
    if not is_admissible(exps, sigma):
        return False
    exps = tuple(exps)
    bl = blocks(exps)
    fixed, plus, minus = _partition(exps, sigma)
    for i in fixed + minus:
        s = bl.block_of(i)
        if i != bl.starts[s] + bl.sizes[s] - 1:
            return False
    for i in fixed:
        pool = [j for j in fixed + plus if (exps[j] - exps[i]) % 2 == 0]
        if i != max(pool):
            return False
    for i in plus:
        s = bl.block_of(i)
        if i != bl.starts[s]:
            return False
    for i in minus:
        cands = [j for j in plus if j > i and (exps[j] - exps[i]) % 2 == 0]
        if sigma[i] != min(cands):
            return False
    for i in plus:
        cands = [j for j in minus if j < i and (exps[j] - exps[i]) % 2 == 0]
        if sigma[i] != max(cands):
            return False
    for i in range(len(exps)):
        if sigma[i] != i and exps[i] == exps[sigma[i]] and abs(i - sigma[i]) > 1:
            return False
    return True


@dataclass(frozen=True)
class GKType:
    """A non-decreasing exponent sequence with an admissible involution."""

    exps: tuple[int, ...]
    sigma: Involution

    def __post_init__(self) -> None:
        if not is_admissible(self.exps, self.sigma):
            raise ValueError("involution is not admissible for the exponents")

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def fixed(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.sigma[i] == i)

    @property
    def total(self) -> int:
        return sum(self.exps)

    @property
    def standard(self) -> bool:
        return is_standard(self.exps, self.sigma)


def choice_block_count(exps) -> int:
    """K: number of even-sized blocks preceded by an odd count of odd-sized
    blocks of equal exponent parity.  Standard involutions number 2^K."""
    bl = blocks(exps)
    k = 0
    for s in range(bl.r):
        if bl.sizes[s] % 2 == 0 and _k_s(bl, s) % 2 == 1:
            k += 1
    return k


def _k_s(bl: BlockStructure, s: int) -> int:
    return sum(
        1
        for u in range(s)
        if (bl.values[u] - bl.values[s]) % 2 == 0 and bl.sizes[u] % 2 == 1
    )


def standard_involutions(exps) -> list[Involution]:
    """Complete duplicate-free list of standard involutions for ``exps``.

    Odd-sized blocks are forced (they either open a dangling slot or consume
    one, alternating within each exponent parity); even-sized blocks with an
    open same-parity slot may freely do both or neither, giving 2^K lists.
    """
    exps = tuple(exps)
    bl = blocks(exps)
    choice_blocks = [
        s for s in range(bl.r) if bl.sizes[s] % 2 == 0 and _k_s(bl, s) % 2 == 1
    ]
    out: list[Involution] = []
    for mask in range(1 << len(choice_blocks)):
        chosen = {choice_blocks[t] for t in range(len(choice_blocks))
                  if mask >> t & 1}
        sigma = list(range(len(exps)))
        open_slot: dict[int, int] = {}  # exponent parity -> dangling index
        ok = True
        for s in range(bl.r):
            par = bl.values[s] % 2
            if bl.sizes[s] % 2 == 1:
                has_plus = _k_s(bl, s) % 2 == 1
                has_dangler = not has_plus
            else:
                has_plus = has_dangler = s in chosen
            lo = bl.starts[s]
            hi = lo + bl.sizes[s] - 1
            if has_plus:
                if par not in open_slot:
                    ok = False
                    break
                d = open_slot.pop(par)
                sigma[d], sigma[lo] = lo, d
            first = lo + (1 if has_plus else 0)
            last = hi - (1 if has_dangler else 0)
            for i in range(first, last, 2):
                sigma[i], sigma[i + 1] = i + 1, i
            if has_dangler:
                open_slot[par] = hi
        if ok:
            out.append(tuple(sigma))
    assert len(out) == 1 << len(choice_blocks)
    return out


def plus_signature(exps, sigma: Involution) -> tuple[int, ...]:
    """Per-block count of raised indices; a complete class invariant."""
    bl = blocks(exps)
    _, plus, _ = _partition(exps, sigma)
    return tuple(sum(1 for i in plus if bl.block_of(i) == s) for s in range(bl.r))


def standardize(exps, sigma: Involution) -> Involution:
    """Standard representative of an admissible involution's class."""
    if not is_admissible(exps, sigma):
        raise ValueError("involution is not admissible for the exponents")
    sig = plus_signature(exps, sigma)
    for cand in standard_involutions(exps):
        if plus_signature(exps, cand) == sig:
            return cand
    raise AssertionError("no standard representative found")


def restrict(gk_type: GKType, k: int) -> GKType | None:
    """Truncate to the first k coordinates, dropping pairs that cross the cut;
    None when the truncated involution stops being admissible."""
    if not 1 <= k <= gk_type.n:
        raise ValueError(f"restriction length {k} out of range")
    sigma_k = tuple(
        i if gk_type.sigma[i] >= k else gk_type.sigma[i] for i in range(k)
    )
    exps_k = gk_type.exps[:k]
    if not is_admissible(exps_k, sigma_k):
        return None
    return GKType(exps_k, sigma_k)


def all_involutions(n: int) -> list[Involution]:
    """Every involution of n points (test support; n stays small)."""
    out: list[Involution] = []

    def rec(sigma: list[int], free: list[int]) -> None:
        if not free:
            out.append(tuple(sigma))
            return
        i = free[0]
        rec(sigma, free[1:])  # i fixed
        for j in free[1:]:
            sigma[i], sigma[j] = j, i
            rec(sigma, [x for x in free[1:] if x != j])
            sigma[i], sigma[j] = i, j

    rec(list(range(n)), list(range(n)))
    return out


def sigma_to_cycles(sigma: Involution) -> list[tuple[int, int]]:
    return [(i, sigma[i]) for i in range(len(sigma)) if i < sigma[i]]
