"""Isogeny classes of connected semisimple groups of bounded dimension.

Enumerates all multisets of simple types with total dimension below a cap,
all central subgroups of each simply connected form, and for every quotient
the minimal dimension of a faithful representation.  The aggregates feed
the bound calculus: the embedding dimension (the smallest general linear
group receiving every semisimple group of dimension <= n) and the largest
possible center order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from . import abelian
from .abelian import CenterSubgroup, FiniteAbelianGroup
from .caps import Caps, CapExceeded, DEFAULT_CAPS
from .rootsystems import SimpleType, admissible_types, build_root_system

Element = Tuple[int, ...]


@dataclass(frozen=True)
class SemisimpleType:
    """A multiset of simple types: the simply connected semisimple groups."""

    factors: Tuple[SimpleType, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    @property
    def center_moduli(self) -> Tuple[int, ...]:
        """Coordinate moduli of the center: one block per simple factor."""
        out: List[int] = []
        for f in self.factors:
            out.extend(f.center_factors)
        return tuple(out)

    @property
    def center_blocks(self) -> List[Tuple[int, int]]:
        """Coordinate span (start, stop) of each factor inside center_moduli."""
        blocks = []
        at = 0
        for f in self.factors:
            k = len(f.center_factors)
            blocks.append((at, at + k))
            at += k
        return blocks

    @property
    def center(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup.from_moduli(self.center_moduli)

    @property
    def center_order(self) -> int:
        return abelian.order_of_moduli(self.center_moduli)

    def __str__(self):
        if not self.factors:
            return "1"
        return "x".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class IsogenyClass:
    """A quotient of a simply connected semisimple group by a central subgroup."""

    base: SemisimpleType
    kernel: FrozenSet[Element]

    def __post_init__(self):
        moduli = self.base.center_moduli
        zero = abelian.zero_of(moduli)
        if zero not in self.kernel:
            raise ValueError("kernel must contain the identity")
        closed = abelian.subgroup_closure(self.kernel, moduli)
        if closed != self.kernel:
            raise ValueError("kernel is not closed under the group law")

    @classmethod
    def from_generators(cls, base: SemisimpleType, gens: Iterable[Element]) -> "IsogenyClass":
        return cls(base, abelian.subgroup_closure(gens, base.center_moduli))

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def kernel_subgroup(self) -> CenterSubgroup:
        return CenterSubgroup(self.base.center_moduli, self.kernel)

    @property
    def is_simply_connected(self) -> bool:
        return len(self.kernel) == 1

    @property
    def is_adjoint(self) -> bool:
        return len(self.kernel) == self.base.center_order

    def name(self) -> str:
        base = str(self.base)
        if self.is_simply_connected:
            return base
        if self.is_adjoint:
            return f"{base}/adj"
        gens = self.kernel_subgroup.generators
        return base + "/" + "+".join("(" + ",".join(map(str, g)) + ")" for g in gens)

    def __str__(self):
        return self.name()


def quotient_center(cls: IsogenyClass) -> FiniteAbelianGroup:
    """Center of the quotient group: the simply connected center modulo the kernel."""
    return FiniteAbelianGroup(
        abelian.quotient_invariants(cls.base.center_moduli, cls.kernel))


def simple_types_up_to_dim(max_dim: int) -> List[SimpleType]:
    # dim always exceeds rank, so scanning ranks up to max_dim is exhaustive
    return sorted((t for t in admissible_types(max_dim) if t.dim <= max_dim),
                  key=lambda t: (t.dim, t.family, t.rank))


def enumerate_semisimple(max_dim: int, caps: Caps = DEFAULT_CAPS) -> List[SemisimpleType]:
    """All semisimple types of total dimension <= max_dim, trivial included."""
    if max_dim < 0:
        raise ValueError("dimension must be non-negative")
    if max_dim > caps.enumeration_dim:
        raise CapExceeded("enumeration dimension", caps.enumeration_dim,
                          observed=max_dim, module="semisimple-enumeration")
    simples = simple_types_up_to_dim(max_dim)
    out: List[SemisimpleType] = []

    def extend(start: int, chosen: List[SimpleType], room: int):
        out.append(SemisimpleType(tuple(chosen)))
        for i in range(start, len(simples)):
            t = simples[i]
            if t.dim <= room:
                chosen.append(t)
                extend(i, chosen, room - t.dim)
                chosen.pop()

    extend(0, [], max_dim)
    return sorted(out, key=lambda s: (s.dim, tuple((f.family, f.rank) for f in s.factors)))


def enumerate_central_subgroups(group: FiniteAbelianGroup,
                                caps: Caps = DEFAULT_CAPS) -> List[CenterSubgroup]:
    """Every subgroup of a finite abelian group, smallest first."""
    if group.order > caps.center_order:
        raise CapExceeded("center order", caps.center_order, observed=group.order,
                          module="semisimple-enumeration")
    subs = abelian.all_subgroups(group.factors, caps)
    return [CenterSubgroup(group.factors, s) for s in subs]


def isogeny_classes(base: SemisimpleType, caps: Caps = DEFAULT_CAPS) -> List[IsogenyClass]:
    moduli = base.center_moduli
    if abelian.order_of_moduli(moduli) > caps.center_order:
        raise CapExceeded("center order", caps.center_order,
                          observed=abelian.order_of_moduli(moduli),
                          module="semisimple-enumeration")
    return [IsogenyClass(base, sub) for sub in abelian.all_subgroups(moduli, caps)]


# --- minimal faithful dimension ------------------------------------------


_min_faithful_cache: Dict[Tuple[SemisimpleType, FrozenSet[Element], int], int] = {}


def min_faithful_dim(cls: IsogenyClass, caps: Caps = DEFAULT_CAPS) -> int:
    """Minimal total dimension of a faithful representation of the quotient.

    A representation of the quotient is a multiset of irreducible summands
    of the simply connected cover (one dominant weight per factor, summand
    dimension the product of the factor dimensions) whose central
    characters all vanish on the kernel.  It is faithful exactly when every
    factor acts nontrivially in some summand and the joint central kernel
    is the quotient kernel, nothing more.
    """
    key = (cls.base, cls.kernel, caps.search_dim)
    hit = _min_faithful_cache.get(key)
    if hit is not None:
        return hit
    value = _min_faithful_search(cls, caps)
    _min_faithful_cache[key] = value
    return value


def _min_faithful_search(cls: IsogenyClass, caps: Caps) -> int:
    base = cls.base
    nf = len(base.factors)
    if nf == 0:
        return 0
    moduli = base.center_moduli
    cells = sorted(abelian.elements_of(moduli))
    index_of = {z: i for i, z in enumerate(cells)}
    full_mask = (1 << len(cells)) - 1
    kernel_mask = 0
    for z in cls.kernel:
        kernel_mask |= 1 << index_of[z]
    target_cov = (1 << nf) - 1

    budget = 2
    while True:
        budget = min(budget, caps.search_dim)
        pool = _summand_pool(base, budget)
        # admissible for this kernel: the character vanishes on all of it,
        # i.e. the kernel sits inside the summand's zero set
        summands = [(d, cov, zmask) for d, cov, zmask in pool
                    if kernel_mask & ~zmask == 0]
        summands = _prune_dominated(summands)
        best = _search_min_total(summands, target_cov, kernel_mask, full_mask, budget)
        if best is not None:
            return best
        if budget >= caps.search_dim:
            raise CapExceeded("faithful search dimension", caps.search_dim,
                              module="semisimple-enumeration")
        budget *= 2


_SUMMAND_POOL_CACHE: Dict[Tuple[SemisimpleType, int], List[Tuple[int, int, int]]] = {}


def _summand_pool(base: SemisimpleType, budget: int) -> List[Tuple[int, int, int]]:
    """Kernel-independent summand candidates for one simply connected form.

    Each entry is (dimension, factor-coverage mask, zero-set mask), the zero
    set being the subgroup of the center on which the summand's central
    character vanishes.  Entries sharing coverage and zero set are collapsed
    to the cheapest dimension; the pool is shared by every central kernel.
    """
    key = (base, budget)
    cached = _SUMMAND_POOL_CACHE.get(key)
    if cached is not None:
        return cached
    systems = [build_root_system(f) for f in base.factors]
    nf = len(systems)
    moduli = base.center_moduli
    cells = sorted(abelian.elements_of(moduli))
    ncells = len(cells)
    denom = math.lcm(1, *moduli)
    blocks = base.center_blocks

    # character contribution of one factor weight on every center element
    per: List[List[Tuple[int, int, Tuple[int, ...]]]] = []
    for fi, rs in enumerate(systems):
        lo, hi = blocks[fi]
        rows = []
        for coords, wdim, chars in rs.weights_up_to(budget):
            ints = [int(c * denom) % denom for c in chars]
            contrib = tuple(sum(zi * ci for zi, ci in zip(z[lo:hi], ints)) % denom
                            for z in cells)
            rows.append((wdim, 1 if any(coords) else 0, contrib))
        per.append(rows)

    cheapest: Dict[Tuple[int, int], int] = {}

    def build(fi: int, dimprod: int, vals: Tuple[int, ...], cov: int):
        if fi == nf:
            if cov == 0:
                return
            zmask = 0
            for idx in range(ncells):
                if vals[idx] % denom == 0:
                    zmask |= 1 << idx
            k = (cov, zmask)
            if k not in cheapest or dimprod < cheapest[k]:
                cheapest[k] = dimprod
            return
        for wdim, nz, contrib in per[fi]:
            ndim = dimprod * wdim
            if ndim > budget:
                break  # weights sorted by dimension
            build(fi + 1, ndim,
                  tuple(v + c for v, c in zip(vals, contrib)),
                  cov | (nz << fi))

    build(0, 1, (0,) * ncells, 0)
    pool = sorted((d, cov, zmask) for (cov, zmask), d in cheapest.items())
    _SUMMAND_POOL_CACHE[key] = pool
    return pool


def _prune_dominated(summands: List[Tuple[int, int, int]]) -> List[Tuple[int, int, int]]:
    """Drop summands beaten in dimension, coverage and zero set at once;
    they can never appear in a minimal faithful multiset."""
    kept: List[Tuple[int, int, int]] = []
    for d, cov, mask in summands:
        if any(d2 <= d and cov2 | cov == cov2 and mask2 & mask == mask2
               for d2, cov2, mask2 in kept):
            continue
        kept.append((d, cov, mask))
    return kept


def _search_min_total(summands, target_cov, kernel_mask, full_mask, budget) -> Optional[int]:
    best: List[Optional[int]] = [None]

    def dfs(start: int, total: int, cov: int, ker: int):
        if cov == target_cov and ker == kernel_mask:
            if best[0] is None or total < best[0]:
                best[0] = total
            return
        for j in range(start, len(summands)):
            d, cj, kj = summands[j]
            if total + d > budget:
                break
            if best[0] is not None and total + d >= best[0]:
                break
            if cov | cj == cov and ker & kj == ker:
                continue  # adds nothing now, hence nothing later
            dfs(j + 1, total + d, cov | cj, ker & kj)

    dfs(0, 0, 0, full_mask)
    return best[0]


# --- aggregates ------------------------------------------------------------


_embedding_cache: Dict[Tuple[int, Caps], int] = {}


def embedding_dim(n: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Smallest m such that every connected semisimple group of dimension
    <= n has a faithful m-dimensional representation.

    Convention: 0 for n < 3, where only the trivial group exists.
    """
    if n < 0:
        raise ValueError("dimension must be non-negative")
    if n < 3:
        return 0
    key = (n, caps)
    hit = _embedding_cache.get(key)
    if hit is not None:
        return hit
    best = 0
    for base in enumerate_semisimple(n, caps):
        if base.is_trivial:
            continue
        for cls in isogeny_classes(base, caps):
            best = max(best, min_faithful_dim(cls, caps))
    _embedding_cache[key] = best
    return best


def max_center_order(n: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Largest center order among semisimple groups of dimension <= n.

    Quotient centers never exceed the simply connected one, so the maximum
    is scanned over the simply connected forms.
    """
    best = 1
    for base in enumerate_semisimple(n, caps):
        best = max(best, base.center_order)
    return best


def class_table(n: int, caps: Caps = DEFAULT_CAPS) -> List[dict]:
    """Rows for the JSON export: one per isogeny class of dimension <= n."""
    rows = []
    for base in enumerate_semisimple(n, caps):
        for cls in isogeny_classes(base, caps):
            rows.append({
                "name": cls.name(),
                "factors": [str(f) for f in base.factors],
                "dim": base.dim,
                "center": [str(d) for d in base.center.factors],
                "kernel_generators": [list(g) for g in cls.kernel_subgroup.generators],
                "kernel_order": str(len(cls.kernel)),
                "quotient_center": [str(d) for d in quotient_center(cls).factors],
                "min_faithful_dim": str(min_faithful_dim(cls, caps)),
            })
    return rows
