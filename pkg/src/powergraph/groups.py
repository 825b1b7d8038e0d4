"""Finite groups as dense Cayley tables.

Elements are integer ids ``0..n-1`` with 0 the identity. Catalog p-groups are
built from their presentations; direct products use a mixed-radix id
encoding (the first factor varies fastest).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from . import kernels
from .numtheory import factorize, is_prime, p_part

ASSOC_FULL_LIMIT = 64

KINDS = (
    "cyclic",
    "abelian",
    "elementary",
    "dihedral",
    "dicyclic",
    "semidihedral",
    "modular",
    "heisenberg",
)

KIND_ALIASES = {"quaternion": "dicyclic", "gq": "dicyclic", "elementary-abelian": "elementary"}


class GroupError(ValueError):
    """Invalid group parameters."""


class CayleyTableError(GroupError):
    """A Cayley table that fails to parse or is not a group.

    ``cell`` holds the first offending (row, column) when there is one.
    """

    def __init__(self, message: str, cell: tuple[int, int] | None = None):
        if cell is not None:
            message = f"{message} at cell ({cell[0]}, {cell[1]})"
        super().__init__(message)
        self.cell = cell


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its full multiplication table."""

    table: np.ndarray
    label: str = "G"
    spec: "NilpotentSpec | None" = field(default=None, repr=False)

    def __post_init__(self):
        t = np.ascontiguousarray(self.table, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    identity = 0

    def multiply(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, x: int) -> int:
        return int(self.inverses[x])

    def power(self, x: int, k: int) -> int:
        k %= self.element_orders[x]
        acc = 0
        base = x
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)  # column holding 0
        inv.setflags(write=False)
        return inv

    @cached_property
    def _membership(self):
        member, orders = kernels.membership(self.table)
        member.setflags(write=False)
        orders.setflags(write=False)
        return member, orders

    @property
    def member(self) -> np.ndarray:
        """member[y, z] is True iff z lies in <y>."""
        return self._membership[0]

    @property
    def element_orders(self) -> np.ndarray:
        return self._membership[1]

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    @cached_property
    def is_cyclic(self) -> bool:
        return bool((self.element_orders == self.order).any())

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def cyclic_rep(self) -> np.ndarray:
        """Smallest generator id of <x>, for every x."""
        mutual = self.member & self.member.T
        rep = mutual.argmax(axis=1)
        rep.setflags(write=False)
        return rep

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"GroupTable({self.label!r}, order={self.order})"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def check_group_axioms(table: np.ndarray, rng_seed: int = 0) -> None:
    """Raise CayleyTableError on the first violated group axiom."""
    t = np.asarray(table)
    n = t.shape[0]
    if t.shape != (n, n) or n == 0:
        raise CayleyTableError(f"table must be square and nonempty, got shape {t.shape}")
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        raise CayleyTableError("entry out of range", tuple(int(v) for v in bad[0]))
    ids = np.arange(n)
    if not (t[0] == ids).all():
        j = int(np.argmax(t[0] != ids))
        raise CayleyTableError("id 0 is not a left identity", (0, j))
    if not (t[:, 0] == ids).all():
        i = int(np.argmax(t[:, 0] != ids))
        raise CayleyTableError("id 0 is not a right identity", (i, 0))
    for i in range(n):
        seen = np.zeros(n, dtype=bool)
        for j in range(n):
            if seen[t[i, j]]:
                raise CayleyTableError("Latin-square violation: repeated entry in row", (i, j))
            seen[t[i, j]] = True
    for j in range(n):
        seen = np.zeros(n, dtype=bool)
        for i in range(n):
            if seen[t[i, j]]:
                raise CayleyTableError("Latin-square violation: repeated entry in column", (i, j))
            seen[t[i, j]] = True
    inv = np.argmin(t, axis=1)
    bad = np.flatnonzero(t[inv, ids] != 0)
    if len(bad):
        raise CayleyTableError("left and right inverses differ", (int(bad[0]), int(inv[bad[0]])))
    if n <= ASSOC_FULL_LIMIT:
        lhs = t[t[:, :, None], ids[None, None, :]]  # (ab)c
        rhs = t[ids[:, None, None], t[None, :, :]]  # a(bc)
        bad = np.argwhere(lhs != rhs)
    else:
        rng = np.random.default_rng(rng_seed)
        a, b, c = rng.integers(0, n, size=(3, 10 * n))
        viol = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
        bad = [(a[k], b[k], c[k]) for k in viol]
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise CayleyTableError(f"associativity fails for ({a}*{b})*{c}", (a, b))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def build_cyclic(n: int, label: str | None = None) -> GroupTable:
    if n < 1:
        raise GroupError(f"cyclic group needs n >= 1, got {n}")
    ids = np.arange(n)
    return GroupTable((ids[:, None] + ids[None, :]) % n, label or f"C{n}")


def _metacyclic(m: int, q: int, u: int, z: int, label: str) -> GroupTable:
    """<r, s | r^m, s^q = r^z, s r s^-1 = r^u>, element r^a s^b has id a + m*b."""
    ids = np.arange(m * q)
    a, b = ids % m, ids // m
    upow = np.array([pow(u, k, m) for k in range(q)])
    A = a[:, None] + a[None, :] * upow[b][:, None]
    B = b[:, None] + b[None, :]
    A = A + z * (B >= q)
    return GroupTable((A % m) + m * (B % q), label)


def build_dicyclic(m: int) -> GroupTable:
    """Dicyclic group of order 4m: <x, y | x^2m, x^m = y^2, y^-1 x y = x^-1>."""
    if m < 2:
        raise GroupError(f"dicyclic group needs m >= 2, got {m}")
    return _metacyclic(2 * m, 2, -1, m, f"Q{4 * m}")


def build_dihedral(order: int) -> GroupTable:
    if order < 4 or order % 2:
        raise GroupError(f"dihedral group needs even order >= 4, got {order}")
    return _metacyclic(order // 2, 2, -1, 0, f"D{order}")


def _heisenberg(p: int) -> GroupTable:
    # (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')
    ids = np.arange(p**3)
    a, b, c = ids % p, (ids // p) % p, ids // (p * p)
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return GroupTable(A + p * B + p * p * C, f"He{p**3}")


def _product_table(tables: list[np.ndarray]) -> np.ndarray:
    out = np.zeros((1, 1), dtype=np.int64)
    size = 1
    for t in tables:
        k = t.shape[0]
        ids = np.arange(size * k)
        lo, hi = ids % size, ids // size
        out = out[lo[:, None], lo[None, :]] + size * t[hi[:, None], hi[None, :]]
        size *= k
    return out


@dataclass(frozen=True)
class PGroupSpec:
    """One catalog group of prime-power order ``prime ** size_exponent``.

    ``parts`` is the partition for ``kind="abelian"`` (cyclic factor exponents).
    """

    prime: int
    kind: str
    size_exponent: int
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        kind = KIND_ALIASES.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        p, k = self.prime, self.size_exponent
        if not is_prime(p):
            raise GroupError(f"{p} is not prime")
        if k < 1:
            raise GroupError(f"size exponent must be >= 1, got {k}")
        if kind not in KINDS:
            raise GroupError(f"unknown kind {kind!r}")
        if kind == "abelian":
            parts = tuple(sorted(self.parts, reverse=True))
            if not parts or min(parts) < 1 or sum(parts) != k:
                raise GroupError(f"abelian parts {self.parts} must be a partition of {k}")
            object.__setattr__(self, "parts", parts)
        elif self.parts:
            raise GroupError(f"kind {kind} takes no partition")
        need_two = {"dihedral": 3, "dicyclic": 3, "semidihedral": 4}
        if kind in need_two:
            if p != 2 or k < need_two[kind]:
                raise GroupError(f"{kind} needs p = 2 and order >= {2 ** need_two[kind]}")
        if kind == "modular" and k < (4 if p == 2 else 3):
            raise GroupError(f"modular group needs order >= {16 if p == 2 else p**3}")
        if kind == "heisenberg" and (p == 2 or k != 3):
            raise GroupError("heisenberg group needs odd p and order p^3")

    @property
    def order(self) -> int:
        return self.prime**self.size_exponent

    @property
    def descriptor(self) -> str:
        head = self.kind
        if self.kind == "abelian":
            head += "[" + ",".join(map(str, self.parts)) + "]"
        return f"{head}:{self.prime}^{self.size_exponent}"

    @property
    def label(self) -> str:
        p, k, n = self.prime, self.size_exponent, self.order
        if self.kind == "cyclic":
            return f"C{n}"
        if self.kind in ("abelian", "elementary"):
            parts = self.parts if self.kind == "abelian" else (1,) * k
            if len(parts) == 1:
                return f"C{n}"
            return "(" + "x".join(f"C{p**e}" for e in parts) + ")"
        prefix = {
            "dihedral": "D",
            "dicyclic": "Q",
            "semidihedral": "SD",
            "modular": "M",
            "heisenberg": "He",
        }[self.kind]
        return f"{prefix}{n}"

    def canonical(self) -> "PGroupSpec":
        """Collapse kinds that name the same group (used for census dedup)."""
        if self.kind == "elementary":
            if self.size_exponent == 1:
                return PGroupSpec(self.prime, "cyclic", 1)
            return PGroupSpec(self.prime, "abelian", self.size_exponent, (1,) * self.size_exponent)
        if self.kind == "abelian" and len(self.parts) == 1:
            return PGroupSpec(self.prime, "cyclic", self.size_exponent)
        return self


def build_p_group(spec: PGroupSpec) -> GroupTable:
    p, k, kind = spec.prime, spec.size_exponent, spec.kind
    n = p**k
    if kind == "cyclic":
        g = build_cyclic(n)
    elif kind in ("abelian", "elementary"):
        parts = spec.parts if kind == "abelian" else (1,) * k
        g = GroupTable(_product_table([build_cyclic(p**e).table for e in parts]))
    elif kind == "dihedral":
        g = build_dihedral(n)
    elif kind == "dicyclic":
        g = build_dicyclic(n // 4)
    elif kind == "semidihedral":
        m = n // 2
        g = _metacyclic(m, 2, m // 2 - 1, 0, "")
    elif kind == "modular":
        m = n // p
        g = _metacyclic(m, p, 1 + p ** (k - 2), 0, "")
    else:
        g = _heisenberg(p)
    return GroupTable(g.table, spec.label, NilpotentSpec((spec,)))


@dataclass(frozen=True)
class NilpotentSpec:
    """Direct product of catalog p-groups over distinct primes, sorted by prime."""

    factors: tuple[PGroupSpec, ...]

    def __post_init__(self):
        factors = tuple(sorted(self.factors, key=lambda f: f.prime))
        if not factors:
            raise GroupError("need at least one factor")
        primes = [f.prime for f in factors]
        if len(set(primes)) != len(primes):
            raise GroupError(f"duplicate primes in {primes}")
        object.__setattr__(self, "factors", factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(f.prime for f in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(f.size_exponent for f in self.factors)

    @property
    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f.order
        return n

    @property
    def label(self) -> str:
        return "x".join(f.label for f in self.factors)

    @property
    def descriptor(self) -> str:
        return ";".join(f.descriptor for f in self.factors)


def direct_product(spec: NilpotentSpec) -> GroupTable:
    if len(spec.factors) == 1:
        return build_p_group(spec.factors[0])
    table = _product_table([build_p_group(f).table for f in spec.factors])
    return GroupTable(table, spec.label, spec)


_FACTOR_RE = re.compile(r"^\s*([a-z\-]+)(?:\[([\d,\s]+)\])?\s*:\s*(\d+)\s*\^\s*(\d+)\s*$")


def parse_descriptor(text: str) -> NilpotentSpec:
    """Parse ``kind:p^k`` factors separated by ``;``, e.g. ``abelian[2,1]:2^3;cyclic:3^2``."""
    factors = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        m = _FACTOR_RE.match(chunk.lower())
        if not m:
            raise GroupError(f"cannot parse factor {chunk.strip()!r}")
        kind, parts, p, k = m.groups()
        parts_t = tuple(int(x) for x in parts.split(",") if x.strip()) if parts else ()
        factors.append(PGroupSpec(int(p), kind, int(k), parts_t))
    return NilpotentSpec(tuple(factors))


def import_cayley_table(text: str | bytes, label: str = "imported") -> GroupTable:
    """Read a Cayley table: ``n`` then n rows of n ids; ``#`` lines are comments."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise CayleyTableError("empty input")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise CayleyTableError(f"first line must be the order, got {lines[0]!r}") from None
    if n < 1:
        raise CayleyTableError(f"order must be positive, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise CayleyTableError(f"expected {n} rows, got {len(rows)}")
    table = np.empty((n, n), dtype=np.int64)
    for i, ln in enumerate(rows):
        toks = ln.split()
        if len(toks) != n:
            raise CayleyTableError(f"row {i} has {len(toks)} entries, expected {n}", (i, min(len(toks), n - 1)))
        for j, tok in enumerate(toks):
            try:
                table[i, j] = int(tok)
            except ValueError:
                raise CayleyTableError(f"non-integer entry {tok!r}", (i, j)) from None
    check_group_axioms(table)
    return GroupTable(table, label)


def export_cayley_table(g: GroupTable) -> str:
    out = [str(g.order)]
    out += [" ".join(map(str, row)) for row in g.table.tolist()]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# element-level operations
# ---------------------------------------------------------------------------


def element_order(g: GroupTable, x: int) -> int:
    return int(g.element_orders[x])


def cyclic_subgroup(g: GroupTable, x: int) -> frozenset[int]:
    return frozenset(np.flatnonzero(g.member[x]).tolist())


def maximal_cyclic_generators(g: GroupTable, within: np.ndarray | None = None) -> list[int]:
    """Smallest generator of each maximal cyclic subgroup, sorted by (order, id).

    ``within`` is an optional boolean mask of a subgroup H; maximality is then
    taken among cyclic subgroups of H.
    """
    n = g.order
    mask = np.ones(n, dtype=bool) if within is None else np.asarray(within, dtype=bool)
    ords = g.element_orders
    # x is dominated if some y in H contains x with larger order
    cont = g.member[mask]  # rows: y in H
    bigger = ords[mask][:, None] > ords[None, :]
    dominated = (cont & bigger).any(axis=0)
    cand = np.flatnonzero(mask & ~dominated)
    reps = sorted({int(g.cyclic_rep[x]) for x in cand}, key=lambda x: (int(ords[x]), x))
    return reps


def maximal_cyclic_subgroups(g: GroupTable) -> list[frozenset[int]]:
    return [cyclic_subgroup(g, x) for x in maximal_cyclic_generators(g)]


def sylow_mask(g: GroupTable, p: int) -> np.ndarray:
    """Elements of p-power order (the Sylow p-subgroup when G is nilpotent)."""
    ords = g.element_orders
    return np.array([p_part(int(o), p) == o for o in ords])


def is_nilpotent(g: GroupTable) -> bool:
    t = g.table
    for p in factorize(g.order) if g.order > 1 else ():
        idx = np.flatnonzero(sylow_mask(g, p))
        if len(idx) != p_part(g.order, p):
            return False
        prods = t[np.ix_(idx, idx)]
        if not np.isin(prods, idx).all():
            return False
    return True


@dataclass(frozen=True)
class ComponentDecomposition:
    """Sylow components of x (as element ids of G) and the support set."""

    components: tuple[int, ...]
    support: frozenset[int]


def sylow_primes(spec: NilpotentSpec | None, g: GroupTable) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(primes, exponents) of |G| in increasing prime order, checked against spec."""
    f = factorize(g.order) if g.order > 1 else {}
    primes, exps = tuple(f), tuple(f.values())
    if spec is not None and (spec.primes, spec.exponents) != (primes, exps):
        raise GroupError(f"group of order {g.order} does not match spec {spec.descriptor}")
    return primes, exps


def component_decompose(spec: NilpotentSpec | None, g: GroupTable, x: int) -> ComponentDecomposition:
    primes, _ = sylow_primes(spec, g)
    o = element_order(g, x)
    comps = []
    for p in primes:
        q = p_part(o, p)
        rest = o // q
        # e = 0 mod rest, e = 1 mod q
        e = rest * pow(rest, -1, q) if q > 1 else 0
        comps.append(g.power(x, e))
    support = frozenset(i for i, c in enumerate(comps) if c != 0)
    return ComponentDecomposition(tuple(comps), support)


def all_components(spec: NilpotentSpec | None, g: GroupTable) -> np.ndarray:
    """Array C with C[x, i] the i-th Sylow component of x."""
    primes, _ = sylow_primes(spec, g)
    out = np.zeros((g.order, len(primes)), dtype=np.int64)
    for x in range(g.order):
        out[x] = component_decompose(spec, g, x).components
    return out


def multiply_all(g: GroupTable, xs: Iterable[int]) -> int:
    acc = 0
    for x in xs:
        acc = int(g.table[acc, x])
    return acc
