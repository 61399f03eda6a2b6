"""Finite groups as dense multiplication tables, with search utilities.

Elements are integers indexing into a multiplication table; the identity is
always index 0.  Construction verifies the group axioms (Light's associativity
test over a generating set for orders up to 512, deterministic sampling above
that) so that ingested tables cannot silently poison later computations.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from math import gcd

from .errors import GroupConstructionError, InputFormatError, InvariantViolation

MAX_ORDER = 4096
_FULL_VERIFY_LIMIT = 512
_SAMPLED_TRIPLES = 20000


class GroupElement:
    """A single element of a FiniteGroup; supports *, ** and inverse()."""

    __slots__ = ("group", "idx")

    def __init__(self, group: "FiniteGroup", idx: int):
        self.group = group
        self.idx = idx

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise ValueError("cannot multiply elements of different groups")
        return self.group.element(self.group._table[self.idx][other.idx])

    def __pow__(self, exponent: int) -> "GroupElement":
        group = self.group
        base = self.idx if exponent >= 0 else group._inv[self.idx]
        k = abs(exponent)
        result = 0
        table = group._table
        while k:
            if k & 1:
                result = table[result][base]
            base = table[base][base]
            k >>= 1
        return group.element(result)

    def inverse(self) -> "GroupElement":
        return self.group.element(self.group._inv[self.idx])

    def order(self) -> int:
        return self.group.element_order(self.idx)

    def conjugated_by(self, h: "GroupElement") -> "GroupElement":
        """h * self * h^-1."""
        return h * self * h.inverse()

    @property
    def name(self) -> str:
        return self.group._names[self.idx]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and other.group is self.group
            and other.idx == self.idx
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.idx))

    def __repr__(self) -> str:
        return self.name


class FiniteGroup:
    """Immutable finite group given by a full multiplication table."""

    def __init__(
        self,
        table,
        names,
        generator_indices,
        *,
        name: str = "G",
        verify: bool = True,
    ):
        n = len(table)
        if n == 0:
            raise GroupConstructionError("a group needs at least the identity")
        if n > MAX_ORDER:
            raise GroupConstructionError(
                f"order {n} exceeds the supported maximum {MAX_ORDER}"
            )
        self._table = [list(row) for row in table]
        self._names = list(names)
        self.name = name
        if len(self._names) != n or len(set(self._names)) != n:
            raise GroupConstructionError("element names must be unique, one per element")
        for row in self._table:
            if len(row) != n or any(not (0 <= v < n) for v in row):
                raise GroupConstructionError("multiplication table is not square over 0..n-1")
        self._gen_idx = tuple(generator_indices)
        self._inv = self._compute_inverses()
        self._orders = None
        self._classes = None
        self._class_of = None
        self._aut = None
        self._elements = [GroupElement(self, i) for i in range(n)]
        self._name_to_idx = {nm: i for i, nm in enumerate(self._names)}
        self.orientation = None
        if verify:
            self._verify()

    # -- basic structure ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._table)

    @property
    def identity(self) -> GroupElement:
        return self._elements[0]

    @property
    def generators(self):
        return tuple(self._elements[i] for i in self._gen_idx)

    def element(self, idx: int) -> GroupElement:
        return self._elements[idx]

    def elements(self):
        return iter(self._elements)

    def generator(self, name: str) -> GroupElement:
        """Look up an element by its display name."""
        try:
            return self._elements[self._name_to_idx[name]]
        except KeyError:
            raise KeyError(f"group {self.name} has no element named {name!r}") from None

    def name_of(self, idx: int) -> str:
        return self._names[idx]

    def mul_idx(self, a: int, b: int) -> int:
        return self._table[a][b]

    def inv_idx(self, a: int) -> int:
        return self._inv[a]

    def element_order(self, idx: int) -> int:
        if self._orders is None:
            orders = []
            for i in range(self.order):
                k, acc = 1, i
                while acc != 0:
                    acc = self._table[acc][i]
                    k += 1
                orders.append(k)
            self._orders = orders
        return self._orders[idx]

    def is_abelian(self) -> bool:
        table = self._table
        n = self.order
        return all(table[a][b] == table[b][a] for a in range(n) for b in range(a))

    def __repr__(self) -> str:
        return f"<group {self.name} of order {self.order}>"

    # -- verification ------------------------------------------------------

    def _compute_inverses(self):
        n = self.order
        inv = [-1] * n
        for i in range(n):
            row = self._table[i]
            for j in range(n):
                if row[j] == 0:
                    if self._table[j][i] != 0:
                        raise GroupConstructionError(
                            f"element {i} has a right inverse that is not a left inverse"
                        )
                    inv[i] = j
                    break
            if inv[i] < 0:
                raise GroupConstructionError(f"element {i} has no inverse")
        return inv

    def _verify(self):
        n = self.order
        table = self._table
        if table[0] != list(range(n)) or any(table[i][0] != i for i in range(n)):
            raise GroupConstructionError("index 0 is not a two-sided identity")
        gens = list(self._gen_idx)
        reached = self._closure_idx(gens)
        if len(reached) != n:
            raise GroupConstructionError(
                f"declared generators span only {len(reached)} of {n} elements"
            )
        if n <= _FULL_VERIFY_LIMIT:
            # Light's test: associativity of the whole table follows from
            # associativity against each member of a generating set.
            for a in gens if gens else [0]:
                row_a = table[a]
                for x in range(n):
                    row_xa = table[table[x][a]]
                    row_x = table[x]
                    for y in range(n):
                        if row_xa[y] != row_x[row_a[y]]:
                            raise GroupConstructionError(
                                f"associativity fails at ({x},{a},{y})"
                            )
        else:
            rng = random.Random(0xF09)
            for _ in range(_SAMPLED_TRIPLES):
                x = rng.randrange(n)
                a = rng.randrange(n)
                y = rng.randrange(n)
                if table[table[x][a]][y] != table[x][table[a][y]]:
                    raise GroupConstructionError(f"associativity fails at ({x},{a},{y})")

    # -- subgroup machinery ------------------------------------------------

    def _closure_idx(self, gen_indices) -> set:
        """Indices of the subgroup generated by the given element indices."""
        table = self._table
        seen = {0}
        frontier = [0]
        gens = sorted({g for g in gen_indices if g != 0})
        for g in gens:
            if g not in seen:
                seen.add(g)
                frontier.append(g)
        while frontier:
            a = frontier.pop()
            row = table[a]
            for g in gens:
                for prod in (row[g], table[g][a]):
                    if prod not in seen:
                        seen.add(prod)
                        frontier.append(prod)
        return seen

    def subgroup(self, elements) -> "Subgroup":
        """Subgroup generated by the given elements."""
        gens = tuple(e.idx for e in elements)
        closure = frozenset(self._closure_idx(gens))
        return Subgroup(self, closure, gens)

    def centralizer(self, e: GroupElement) -> "Subgroup":
        table = self._table
        i = e.idx
        members = frozenset(a for a in range(self.order) if table[a][i] == table[i][a])
        return Subgroup(self, members, _small_generating_set(self, members))

    def center(self) -> "Subgroup":
        table = self._table
        n = self.order
        members = frozenset(
            a for a in range(n) if all(table[a][b] == table[b][a] for b in range(n))
        )
        return Subgroup(self, members, _small_generating_set(self, members))

    def conjugacy_classes(self, predicate=None):
        """Conjugacy classes as tuples of elements, ordered by smallest index.

        With a predicate, returns the classes of the selected elements; the
        selected set must be a union of classes (anything else means the
        predicate is not a class function, which is a caller bug).
        """
        if self._classes is None:
            table = self._table
            inv = self._inv
            n = self.order
            class_of = [-1] * n
            classes = []
            for a in range(n):
                if class_of[a] >= 0:
                    continue
                orbit = sorted({table[table[h][a]][inv[h]] for h in range(n)})
                cid = len(classes)
                for b in orbit:
                    class_of[b] = cid
                classes.append(tuple(orbit))
            self._classes = classes
            self._class_of = class_of
        result = []
        for cls in self._classes:
            members = [self._elements[i] for i in cls]
            if predicate is None:
                result.append(tuple(members))
                continue
            flags = [bool(predicate(m)) for m in members]
            if all(flags):
                result.append(tuple(members))
            elif any(flags):
                raise InvariantViolation(
                    "predicate splits a conjugacy class; it is not a class function"
                )
        return result

    def class_size(self, idx: int) -> int:
        self.conjugacy_classes()
        return len(self._classes[self._class_of[idx]])

    def involutions(self):
        return [e for e in self._elements if e.order() == 2]

    def automorphisms(self):
        if self._aut is None:
            self._aut = automorphism_search(self)
        return self._aut

    # -- orientation character --------------------------------------------

    def attach_orientation(self, generator_signs: dict) -> "FiniteGroup":
        """Attach the +/-1 character determined by signs on the generators.

        The signs must extend to a homomorphism to {+1, -1}; anything else is
        rejected.  Attaching the same character twice is a no-op.
        """
        signs = {}
        for key, value in generator_signs.items():
            idx = key.idx if isinstance(key, GroupElement) else self._name_to_idx[key]
            if value not in (1, -1):
                raise ValueError("orientation signs must be +1 or -1")
            signs[idx] = value
        missing = [g for g in self._gen_idx if g not in signs]
        if missing:
            raise ValueError(f"orientation signs missing for generators {missing}")
        table = self._table
        kappa = [0] * self.order
        kappa[0] = 1
        frontier = [0]
        while frontier:
            a = frontier.pop()
            for g, sign in signs.items():
                b = table[a][g]
                if kappa[b] == 0:
                    kappa[b] = kappa[a] * sign
                    frontier.append(b)
        if any(v == 0 for v in kappa):
            raise GroupConstructionError("orientation generators do not span the group")
        n = self.order
        for a in range(n):
            row = table[a]
            ka = kappa[a]
            for b in range(n):
                if kappa[row[b]] != ka * kappa[b]:
                    raise GroupConstructionError(
                        "orientation signs do not define a character"
                    )
        new = tuple(kappa)
        if self.orientation is not None and self.orientation != new:
            raise GroupConstructionError("conflicting orientation already attached")
        self.orientation = new
        return self

    def kappa(self, e: GroupElement) -> int:
        if self.orientation is None:
            raise ValueError(f"group {self.name} has no orientation character attached")
        return self.orientation[e.idx]

    def orientation_reversing(self, e: GroupElement) -> bool:
        return self.kappa(e) == -1


def _small_generating_set(G: FiniteGroup, members: frozenset) -> tuple:
    """Greedy small generating set for a subgroup given as an index set."""
    gens = []
    span = {0}
    for idx in sorted(members):
        if idx not in span:
            gens.append(idx)
            span = G._closure_idx(gens)
            if len(span) == len(members):
                break
    if len(span) != len(members):
        raise InvariantViolation("member set is not closed under multiplication")
    return tuple(gens)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a parent group: element index set plus generators."""

    parent: FiniteGroup
    element_indices: frozenset
    generator_indices: tuple

    @property
    def order(self) -> int:
        return len(self.element_indices)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, e: GroupElement) -> bool:
        return e.group is self.parent and e.idx in self.element_indices

    @property
    def generators(self):
        return tuple(self.parent.element(i) for i in self.generator_indices)

    def elements_sorted(self):
        return [self.parent.element(i) for i in sorted(self.element_indices)]

    def is_normal(self) -> bool:
        table = self.parent._table
        inv = self.parent._inv
        members = self.element_indices
        return all(
            table[table[h][a]][inv[h]] in members
            for a in members
            for h in range(self.parent.order)
        )

    def as_group(self, name: str = None) -> "FiniteGroup":
        """The subgroup reindexed as a standalone group (0 = identity).

        The result carries ``parent_indices`` (new index -> parent index),
        ``from_parent`` (parent index -> new index) and ``parent_group``.
        """
        parent = self.parent
        ordered = sorted(self.element_indices)
        if ordered[0] != 0:
            raise InvariantViolation("subgroup does not contain the identity")
        new_of = {old: new for new, old in enumerate(ordered)}
        table = [[new_of[parent._table[a][b]] for b in ordered] for a in ordered]
        names = [parent._names[i] for i in ordered]
        gens = [new_of[i] for i in self.generator_indices]
        sub = FiniteGroup(
            table,
            names,
            gens,
            name=name or f"{parent.name}-sub{self.order}",
            verify=False,  # restriction of a verified table stays associative
        )
        sub.parent_indices = tuple(ordered)
        sub.from_parent = new_of
        sub.parent_group = parent
        return sub


# ---------------------------------------------------------------------------
# Constructors.


def cyclic(n: int, gen_name: str = "c") -> FiniteGroup:
    """Cyclic group of order n, generator named ``gen_name``."""
    if n < 1:
        raise GroupConstructionError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["1"] + [gen_name if i == 1 else f"{gen_name}^{i}" for i in range(1, n)]
    gens = [1] if n > 1 else []
    return FiniteGroup(table, names, gens, name=f"C{n}")


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order; elements ``D^i A^j``.

    ``D`` is the rotation of order ``order/2`` and ``A`` a reflection.  Note
    the naming convention used throughout this package: the dihedral group
    "D_2g" is the one with rotation subgroup of order 2g, i.e. order 4g.
    """
    if order < 2 or order % 2:
        raise GroupConstructionError("dihedral order must be even and >= 2")
    n = order // 2

    def pack(i, j):
        return i + n * j

    table = [[0] * order for _ in range(order)]
    for i1 in range(n):
        for j1 in range(2):
            a = pack(i1, j1)
            for i2 in range(n):
                for j2 in range(2):
                    i = (i1 + (i2 if j1 == 0 else -i2)) % n
                    table[a][pack(i2, j2)] = pack(i, (j1 + j2) % 2)
    names = ["1"] * order
    for i in range(n):
        for j in range(2):
            rot = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
            ref = "A" if j else ""
            if rot or ref:
                names[pack(i, j)] = rot + ref
    gens = [pack(1, 0), pack(0, 1)] if n > 1 else [pack(0, 1)]
    return FiniteGroup(table, names, gens, name=f"D(order {order})")


def dihedral_from_reflections(order: int, names=("w", "x")) -> FiniteGroup:
    """Dihedral group of the given order generated by two reflections.

    With generators (w, x), the rotation t = w*x has order ``order/2`` and
    elements are written t^i or t^i*x.
    """
    if order < 4 or order % 2:
        raise GroupConstructionError("order must be even and >= 4")
    n = order // 2
    first, second = names
    rot_name = first + second

    def pack(i, d):
        return i + n * d

    table = [[0] * order for _ in range(order)]
    for i1 in range(n):
        for d1 in range(2):
            a = pack(i1, d1)
            for i2 in range(n):
                for d2 in range(2):
                    i = (i1 + (i2 if d1 == 0 else -i2)) % n
                    table[a][pack(i2, d2)] = pack(i, (d1 + d2) % 2)
    elt_names = ["1"] * order
    for i in range(1, n):
        elt_names[pack(i, 0)] = rot_name if i == 1 else f"({rot_name})^{i}"
    elt_names[pack(0, 1)] = second
    elt_names[pack(1, 1)] = first
    for i in range(2, n):
        elt_names[pack(i, 1)] = f"({rot_name})^{i}{second}"
    gens = [pack(1, 1), pack(0, 1)]  # first, then second
    return FiniteGroup(table, elt_names, gens, name=f"D(order {order};{first},{second})")


def metacyclic(n: int, t: int, square: int = 0, names=("B", "C")) -> FiniteGroup:
    """Group <B, C : C^n = 1, B^-1 C B = C^t, B^2 = C^square> of order 2n.

    Consistency demands t^2 = 1 and square*(t - 1) = 0 modulo n; anything else
    is rejected.  square = 0 gives the split extension (dihedral when
    t = n - 1); square = n/2 with t = n - 1 gives the dicyclic group.
    """
    if n < 1:
        raise GroupConstructionError("n must be positive")
    t %= n
    square %= n
    if gcd(t, n) != 1:
        raise GroupConstructionError(f"twist {t} is not a unit modulo {n}")
    if (t * t) % n != 1 % n:
        raise GroupConstructionError(f"twist {t} does not square to 1 modulo {n}")
    if (square * (t - 1)) % n != 0:
        raise GroupConstructionError(
            f"B^2 = C^{square} is not fixed by the twist {t} modulo {n}"
        )
    b_name, c_name = names
    order = 2 * n

    def pack(i, j):
        return i + n * j

    table = [[0] * order for _ in range(order)]
    for i1 in range(n):
        for j1 in range(2):
            a = pack(i1, j1)
            for i2 in range(n):
                i = (i1 + (i2 * t if j1 else i2)) % n
                for j2 in range(2):
                    if j1 and j2:
                        table[a][pack(i2, j2)] = pack((i + square) % n, 0)
                    else:
                        table[a][pack(i2, j2)] = pack(i, (j1 + j2) % 2)
    elt_names = ["1"] * order
    for i in range(1, n):
        elt_names[pack(i, 0)] = c_name if i == 1 else f"{c_name}^{i}"
    elt_names[pack(0, 1)] = b_name
    for i in range(1, n):
        elt_names[pack(i, 1)] = (c_name if i == 1 else f"{c_name}^{i}") + b_name
    gens = [pack(0, 1), pack(1, 0)]
    return FiniteGroup(table, elt_names, gens, name=f"metacyclic({n},{t},{square})")


def dicyclic(m: int) -> FiniteGroup:
    """Dicyclic group of order 4m: <A, C : C^2m = 1, A^2 = C^m, A C A^-1 = C^-1>."""
    if m < 2:
        raise GroupConstructionError("dicyclic groups start at order 8 (m >= 2)")
    return metacyclic(2 * m, 2 * m - 1, m, names=("A", "C"))


def dicyclic_twisted(m: int, t: int) -> FiniteGroup:
    """Order-4m group <A, C : C^2m = 1, A^2 = C^m, A C A^-1 = C^t> if consistent."""
    return metacyclic(2 * m, t, m, names=("A", "C"))


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = None) -> FiniteGroup:
    """Direct product with pair indexing and combined element names."""
    ng, nh = G.order, H.order
    order = ng * nh
    if order > MAX_ORDER:
        raise GroupConstructionError(f"product order {order} exceeds {MAX_ORDER}")

    def pack(a, b):
        return a * nh + b

    tg, th = G._table, H._table
    table = [[0] * order for _ in range(order)]
    for a1 in range(ng):
        for b1 in range(nh):
            row = table[pack(a1, b1)]
            ra = tg[a1]
            rb = th[b1]
            for a2 in range(ng):
                base = ra[a2] * nh
                for b2 in range(nh):
                    row[pack(a2, b2)] = base + rb[b2]
    names = ["1"] * order
    for a in range(ng):
        for b in range(nh):
            if a == 0 and b == 0:
                continue
            na, nb = G._names[a], H._names[b]
            names[pack(a, b)] = na if b == 0 else (nb if a == 0 else f"{na}*{nb}")
    if len(set(names)) != order:
        # factor names overlap; fall back to unambiguous pair naming
        for a in range(ng):
            for b in range(nh):
                if a or b:
                    names[pack(a, b)] = f"({G._names[a]}, {H._names[b]})"
    gens = [pack(g.idx, 0) for g in G.generators] + [pack(0, h.idx) for h in H.generators]
    return FiniteGroup(
        table, names, gens, name=name or f"{G.name} x {H.name}", verify=False
    )


def semidirect_cyclic(n: int, k: int, t: int, names=("c", "b")) -> FiniteGroup:
    """Split extension of C_n by C_k where the C_k generator acts as c -> c^t."""
    if n < 1 or k < 1:
        raise GroupConstructionError("orders must be positive")
    t %= n
    if gcd(t, n) != 1 or pow(t, k, n) != 1 % n:
        raise GroupConstructionError(
            f"t = {t} does not define an order-dividing-{k} action on C_{n}"
        )
    c_name, b_name = names
    order = n * k
    if order > MAX_ORDER:
        raise GroupConstructionError(f"order {order} exceeds {MAX_ORDER}")
    powers = [pow(t, j, n) for j in range(k)]

    def pack(i, j):
        return i * k + j

    table = [[0] * order for _ in range(order)]
    for i1 in range(n):
        for j1 in range(k):
            row = table[pack(i1, j1)]
            tw = powers[j1]
            for i2 in range(n):
                ii = (i1 + i2 * tw) % n
                for j2 in range(k):
                    row[pack(i2, j2)] = pack(ii, (j1 + j2) % k)
    names_list = ["1"] * order
    for i in range(n):
        for j in range(k):
            if i == 0 and j == 0:
                continue
            ci = "" if i == 0 else (c_name if i == 1 else f"{c_name}^{i}")
            bj = "" if j == 0 else (b_name if j == 1 else f"{b_name}^{j}")
            names_list[pack(i, j)] = ci + bj
    gens = []
    if n > 1:
        gens.append(pack(1, 0))
    if k > 1:
        gens.append(pack(0, 1))
    return FiniteGroup(table, names_list, gens, name=f"C{n}:C{k}(t={t})")


def semidirect_with_automorphism(
    G: FiniteGroup, alpha, top_order: int = 2, top_name: str = "x", name: str = None
) -> FiniteGroup:
    """Split extension of G by a cyclic group acting through automorphism alpha."""
    mapping = list(alpha.mapping) if isinstance(alpha, Automorphism) else list(alpha)
    _require_automorphism(G, mapping)
    powers = [list(range(G.order))]
    for _ in range(1, top_order):
        powers.append([mapping[i] for i in powers[-1]])
    if [mapping[i] for i in powers[-1]] != list(range(G.order)):
        raise GroupConstructionError(f"automorphism order does not divide {top_order}")
    ng = G.order
    order = ng * top_order
    if order > MAX_ORDER:
        raise GroupConstructionError(f"order {order} exceeds {MAX_ORDER}")

    def pack(a, j):
        return a * top_order + j

    tg = G._table
    table = [[0] * order for _ in range(order)]
    for a1 in range(ng):
        for j1 in range(top_order):
            row = table[pack(a1, j1)]
            twisted = powers[j1]
            ra = tg[a1]
            for a2 in range(ng):
                prod = ra[twisted[a2]]
                for j2 in range(top_order):
                    row[pack(a2, j2)] = pack(prod, (j1 + j2) % top_order)
    names = ["1"] * order
    for a in range(ng):
        for j in range(top_order):
            if a == 0 and j == 0:
                continue
            na = "" if a == 0 else G._names[a]
            nx = "" if j == 0 else (top_name if j == 1 else f"{top_name}^{j}")
            names[pack(a, j)] = na if not nx else (nx if not na else f"{na}*{nx}")
    gens = [pack(g.idx, 0) for g in G.generators] + [pack(0, 1)]
    return FiniteGroup(
        table, names, gens, name=name or f"{G.name}:C{top_order}", verify=False
    )


def extension_group_b(g: int) -> FiniteGroup:
    """The order-8g extended group for the one-cone-point reflection signature.

    Presentation <x, z, w : x^2 = z^2 = w^2 = (zw)^(2g) = 1,
    x z x = (zw)^(g-1) z, x w x = (zw)^g z>: the dihedral group on the
    reflections z, w extended by the involution x.  Orientation character:
    z and w reverse, x preserves.
    """
    if g < 2:
        raise GroupConstructionError("g must be at least 2")
    base = dihedral_from_reflections(4 * g, names=("z", "w"))
    n = 2 * g

    def pack(i, d):
        return i + n * d

    # conjugation by x sends t -> t^-1 and t^i w -> t^(g+1-i) w  (t = zw)
    mapping = [0] * (4 * g)
    for i in range(n):
        mapping[pack(i, 0)] = pack((-i) % n, 0)
        mapping[pack(i, 1)] = pack((g + 1 - i) % n, 1)
    group = semidirect_with_automorphism(
        base, mapping, top_order=2, top_name="x", name=f"Gb({g})"
    )
    group.attach_orientation({"z": -1, "w": -1, "x": 1})
    return group


_PERM_LINE = re.compile(r"^\s*perm\s*(.*)$")
_CYCLE = re.compile(r"\(([^()]*)\)")


def from_permutations(source) -> FiniteGroup:
    """Group generated by permutations, one ``perm (a b c)(d e)`` per line.

    Points are 1-based.  Accepts a string (newline separated) or a list of
    lines.  Element names use cycle notation.
    """
    lines = source.splitlines() if isinstance(source, str) else list(source)
    raw_gens = []
    degree = 0
    for line in lines:
        if not line.strip():
            continue
        m = _PERM_LINE.match(line)
        if not m:
            raise InputFormatError(f"expected 'perm (...)(...)', got {line!r}")
        body = m.group(1).strip()
        cycles = []
        for cm in _CYCLE.finditer(body):
            entries = cm.group(1).replace(",", " ").split()
            try:
                points = [int(p) for p in entries]
            except ValueError:
                raise InputFormatError(f"bad cycle {cm.group(0)!r} in {line!r}") from None
            if any(p < 1 for p in points):
                raise InputFormatError("permutation points are 1-based")
            if len(set(points)) != len(points):
                raise InputFormatError(f"repeated point in cycle {cm.group(0)!r}")
            cycles.append(points)
            degree = max(degree, max(points, default=0))
        if _CYCLE.sub("", body).strip():
            raise InputFormatError(f"unparsed text in {line!r}")
        raw_gens.append(cycles)
    if not raw_gens:
        raise InputFormatError("no permutations given")
    perms = []
    for cycles in raw_gens:
        perm = list(range(degree))
        touched = set()
        for cycle in cycles:
            if not touched.isdisjoint(cycle):
                raise InputFormatError("cycles within one permutation must be disjoint")
            touched.update(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                perm[a - 1] = b - 1
        perms.append(tuple(perm))

    identity = tuple(range(degree))
    index_of = {identity: 0}
    elements = [identity]
    frontier = [identity]
    while frontier:
        p = frontier.pop()
        for q in perms:
            prod = tuple(p[q[i]] for i in range(degree))
            if prod not in index_of:
                if len(elements) >= MAX_ORDER:
                    raise GroupConstructionError(
                        f"permutation group exceeds order {MAX_ORDER}"
                    )
                index_of[prod] = len(elements)
                elements.append(prod)
                frontier.append(prod)
    table = [
        [index_of[tuple(p[q[i]] for i in range(degree))] for q in elements]
        for p in elements
    ]
    names = [_cycle_notation(p) for p in elements]
    gen_idx = [index_of[p] for p in perms]
    return FiniteGroup(table, names, gen_idx, name=f"perm-group({len(elements)})")


def _cycle_notation(perm: tuple) -> str:
    n = len(perm)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(parts) if parts else "()"


def from_table(text: str) -> FiniteGroup:
    """Parse the plain-text table format.

    Line 1 is ``order n``; the next n lines are rows of n space-separated
    0-based indices (row i lists the products i*j); an optional final line
    ``generators i1 i2 ...`` names a generating set.  The identity may sit at
    any index; elements are relabeled so it lands at index 0, with names
    remembering the original position (``g3`` for input index 3).
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].lower().startswith("order"):
        raise InputFormatError("first line must be 'order n'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise InputFormatError("first line must be 'order n'") from None
    if n < 1 or n > MAX_ORDER:
        raise InputFormatError(f"order must be between 1 and {MAX_ORDER}")
    if len(lines) < n + 1:
        raise InputFormatError(f"expected {n} table rows, found {len(lines) - 1}")
    raw = []
    for i in range(1, n + 1):
        try:
            row = [int(v) for v in lines[i].split()]
        except ValueError:
            raise InputFormatError(f"non-integer entry in row {i - 1}") from None
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise InputFormatError(f"row {i - 1} must have {n} entries in 0..{n - 1}")
        raw.append(row)
    gen_line = None
    if len(lines) > n + 1:
        if not lines[n + 1].lower().startswith("generators"):
            raise InputFormatError("trailing content must be a 'generators ...' line")
        try:
            gen_line = [int(v) for v in lines[n + 1].split()[1:]]
        except ValueError:
            raise InputFormatError("bad generator indices") from None
        if any(not 0 <= v < n for v in gen_line):
            raise InputFormatError("generator indices out of range")
        if len(lines) > n + 2:
            raise InputFormatError("unexpected extra lines after the generators line")
    identity = None
    for e in range(n):
        if raw[e] == list(range(n)) and all(raw[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise InputFormatError("table has no two-sided identity")
    order_old = [identity] + [i for i in range(n) if i != identity]
    new_of = {old: new for new, old in enumerate(order_old)}
    table = [[new_of[raw[a][b]] for b in order_old] for a in order_old]
    names = [f"g{old}" for old in order_old]
    if gen_line is not None:
        gens = [new_of[i] for i in gen_line]
    else:
        gens = list(_generating_set_from_table(table))
    try:
        return FiniteGroup(table, names, gens, name=f"table-group({n})")
    except GroupConstructionError as exc:
        raise InputFormatError(f"invalid table: {exc}") from None


def _generating_set_from_table(table) -> tuple:
    n = len(table)
    gens = []
    span = {0}
    for idx in range(1, n):
        if idx in span:
            continue
        gens.append(idx)
        span = {0}
        frontier = [0]
        for g in gens:
            if g not in span:
                span.add(g)
                frontier.append(g)
        while frontier:
            a = frontier.pop()
            for g in gens:
                for prod in (table[a][g], table[g][a]):
                    if prod not in span:
                        span.add(prod)
                        frontier.append(prod)
        if len(span) == n:
            break
    return tuple(gens)


# ---------------------------------------------------------------------------
# Homomorphism search: automorphisms, isomorphisms, recognition.


class Automorphism:
    """A bijective self-map recorded as a full index mapping."""

    __slots__ = ("group", "mapping")

    def __init__(self, group: FiniteGroup, mapping: tuple):
        self.group = group
        self.mapping = tuple(mapping)

    def __call__(self, e: GroupElement) -> GroupElement:
        return self.group.element(self.mapping[e.idx])

    def apply_indices(self, indices) -> tuple:
        m = self.mapping
        return tuple(m[i] for i in indices)

    def generator_images(self):
        return tuple(self.group.element(self.mapping[g.idx]) for g in self.group.generators)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.mapping))

    def preserves_character(self, character) -> bool:
        mapping = self.mapping
        return all(character[mapping[i]] == character[i] for i in range(len(character)))

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and other.group is self.group
            and other.mapping == self.mapping
        )

    def __hash__(self):
        return hash((id(self.group), self.mapping))

    def __repr__(self):
        images = ", ".join(
            f"{g.name}->{self.group.name_of(self.mapping[g.idx])}"
            for g in self.group.generators
        )
        return f"<automorphism {images}>"


def close_generator_map(G: FiniteGroup, H: FiniteGroup, pairs):
    """Force a partial generator assignment closed under products.

    ``pairs`` is a sequence of (source index, image index).  Returns
    ``(img, covered)`` where ``img`` maps each element of the subgroup
    generated by the sources to its forced image and ``covered`` is the size
    of that subgroup, or ``None`` if the assignment is inconsistent (either
    non-multiplicative or non-injective).  ``covered == G.order`` therefore
    certifies an injective homomorphism defined on all of G.
    """
    n = G.order
    tg = G._table
    th = H._table
    img = [-1] * n
    img[0] = 0
    used = bytearray(H.order)
    used[0] = 1
    defined = [0]
    for a, b in pairs:
        if img[a] == -1:
            if used[b]:
                return None
            img[a] = b
            used[b] = 1
            defined.append(a)
        elif img[a] != b:
            return None
    i = 1
    while i < len(defined):
        a = defined[i]
        fa = img[a]
        row_a = tg[a]
        hrow_a = th[fa]
        for j in range(len(defined)):
            b = defined[j]
            fb = img[b]
            p = row_a[b]
            q = hrow_a[fb]
            ip = img[p]
            if ip == -1:
                if used[q]:
                    return None
                img[p] = q
                used[q] = 1
                defined.append(p)
            elif ip != q:
                return None
            p = tg[b][a]
            q = th[fb][fa]
            ip = img[p]
            if ip == -1:
                if used[q]:
                    return None
                img[p] = q
                used[q] = 1
                defined.append(p)
            elif ip != q:
                return None
        i += 1
    return img, len(defined)


def _image_candidates(G: FiniteGroup, H: FiniteGroup, src_idx: int):
    """Elements of H that could be the image of the given element of G."""
    order = G.element_order(src_idx)
    size = G.class_size(src_idx)
    return [
        j
        for j in range(H.order)
        if H.element_order(j) == order and H.class_size(j) == size
    ]


def _hom_search(G: FiniteGroup, H: FiniteGroup, constraint_pairs, limit=None):
    """Injective homs G -> H defined on all of G, extending the constraints."""
    if G.order == 1:
        return [[0]] if H.order >= 1 else []
    gen_idx = [g.idx for g in G.generators]
    fixed = dict(constraint_pairs)
    levels = [(a, (b,)) for a, b in fixed.items() if a not in gen_idx]
    for g in gen_idx:
        if g in fixed:
            levels.append((g, (fixed[g],)))
        else:
            levels.append((g, tuple(_image_candidates(G, H, g))))
    results = []
    assignment = []
    total_levels = len(levels)

    def dfs(level):
        if limit is not None and len(results) >= limit:
            return
        src, candidates = levels[level]
        last = level + 1 == total_levels
        for cand in candidates:
            assignment.append((src, cand))
            closed = close_generator_map(G, H, assignment)
            if closed is not None:
                img, covered = closed
                if last:
                    if covered == G.order:
                        results.append(img)
                else:
                    dfs(level + 1)
            assignment.pop()
            if limit is not None and len(results) >= limit:
                return

    dfs(0)
    return results


def automorphism_search(G: FiniteGroup, constraint: dict = None, limit=None):
    """All automorphisms of G, optionally pinning images of some elements.

    ``constraint`` maps elements to their required images.  Results come back
    sorted by generator-image indices, so the output order is reproducible.
    """
    pairs = []
    if constraint:
        for src, dst in constraint.items():
            pairs.append((src.idx, dst.idx))
    raw = _hom_search(G, G, pairs, limit=limit)
    auts = [Automorphism(G, tuple(img)) for img in raw]
    gen_idx = [g.idx for g in G.generators]
    auts.sort(key=lambda a: a.apply_indices(gen_idx))
    return auts


def iso_search(G: FiniteGroup, H: FiniteGroup, first_only: bool = True):
    """Isomorphisms G -> H as full image arrays (empty list if none)."""
    if G.order != H.order:
        return []
    if sorted(G.element_order(i) for i in range(G.order)) != sorted(
        H.element_order(i) for i in range(H.order)
    ):
        return []
    return _hom_search(G, H, [], limit=1 if first_only else None)


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    if G.order != H.order:
        return False
    if G.is_abelian() != H.is_abelian():
        return False
    if sorted(len(c) for c in G.conjugacy_classes()) != sorted(
        len(c) for c in H.conjugacy_classes()
    ):
        return False
    return bool(iso_search(G, H, first_only=True))


# ---------------------------------------------------------------------------
# Structure recognition.


@dataclass(frozen=True)
class GroupStructure:
    """Outcome of recognize(): a named shape plus witnessing elements.

    The witness proves the claim: the dihedral witness, for instance, is a
    rotation/reflection pair satisfying the dihedral presentation and
    generating the group, which pins the isomorphism type exactly.
    """

    kind: str
    order: int
    details: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)

    def describe(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.order}"
        if self.kind == "elementary-abelian":
            return f"C{self.details['prime']}^{self.details['rank']}"
        if self.kind == "dihedral":
            return f"dihedral of order {self.order}"
        if self.kind == "dihedral-x-c2":
            return f"dihedral of order {self.order // 2} x C2"
        inv = self.details.get("abelianization")
        tail = f", abelianization {inv}" if inv else ""
        return f"unrecognized group of order {self.order}{tail}"


def _dihedral_witness(G: FiniteGroup):
    n = G.order
    if n % 2 or n < 6:
        return None
    half = n // 2
    table = G._table
    rotations = [i for i in range(n) if G.element_order(i) == half]
    for r in rotations:
        powers = {0}
        acc = r
        while acc != 0:
            powers.add(acc)
            acc = table[acc][r]
        r_inv = G._inv[r]
        for s in range(1, n):
            if s in powers or G.element_order(s) != 2:
                continue
            if table[table[s][r]][s] == r_inv:
                return G.element(r), G.element(s)
    return None


def index_two_subgroups(G: FiniteGroup):
    """All index-2 subgroups, via the square-commutator kernel."""
    n = G.order
    table = G._table
    inv = G._inv
    gens = set()
    for a in range(n):
        gens.add(table[a][a])
        for b in range(a):
            gens.add(table[table[inv[a]][inv[b]]][table[a][b]])
    k_set = G._closure_idx(sorted(gens))
    if len(k_set) == n:
        return []
    k_sorted = sorted(k_set)
    coset_of = {}
    reps = []
    for a in range(n):
        if a in coset_of:
            continue
        cid = len(reps)
        reps.append(a)
        for h in k_sorted:
            coset_of[table[a][h]] = cid
    # the quotient is elementary abelian of 2-power order; set up F2
    # coordinates and read off the index-2 subgroups as hyperplanes
    basis_bits = {0: 0}
    rank = 0
    for cid in range(len(reps)):
        if cid in basis_bits:
            continue
        bit = 1 << rank
        rank += 1
        for known, vec in list(basis_bits.items()):
            combo = coset_of[table[reps[known]][reps[cid]]]
            if combo not in basis_bits:
                basis_bits[combo] = vec | bit
    subgroups = []
    for mask in range(1, 1 << rank):
        members = frozenset(
            a
            for a in range(n)
            if bin(basis_bits[coset_of[a]] & mask).count("1") % 2 == 0
        )
        subgroups.append(Subgroup(G, members, _small_generating_set(G, members)))
    subgroups.sort(key=lambda s: sorted(s.element_indices))
    return subgroups


def recognize(G: FiniteGroup) -> GroupStructure:
    """Identify cyclic, elementary abelian, dihedral, or dihedral x C2 shape.

    Anything else comes back as kind "other" with the abelianization attached.
    Every positive identification carries explicit witness elements.
    """
    n = G.order
    orders = [G.element_order(i) for i in range(n)]
    if max(orders) == n:
        gen = G.element(orders.index(n)) if n > 1 else G.identity
        return GroupStructure("cyclic", n, {}, {"generator": gen})
    if G.is_abelian():
        non_identity = sorted(set(orders[1:]))
        if len(non_identity) == 1 and _is_prime(non_identity[0]):
            p = non_identity[0]
            rank, m = 0, n
            while m % p == 0:
                m //= p
                rank += 1
            if m == 1:
                return GroupStructure(
                    "elementary-abelian",
                    n,
                    {"prime": p, "rank": rank},
                    {"basis": _elementary_basis(G)},
                )
    witness = _dihedral_witness(G)
    if witness is not None:
        r, s = witness
        return GroupStructure(
            "dihedral", n, {"rotation_order": n // 2}, {"rotation": r, "reflection": s}
        )
    if n % 4 == 0:
        center = G.center()
        central_involutions = [
            G.element(i) for i in sorted(center.element_indices) if G.element_order(i) == 2
        ]
        for y in central_involutions:
            for H in index_two_subgroups(G):
                if y in H:
                    continue
                sub = H.as_group()
                w = _dihedral_witness(sub)
                if w is not None:
                    r_sub, s_sub = w
                    to_parent = sub.parent_indices
                    return GroupStructure(
                        "dihedral-x-c2",
                        n,
                        {"dihedral_order": n // 2},
                        {
                            "central": y,
                            "rotation": G.element(to_parent[r_sub.idx]),
                            "reflection": G.element(to_parent[s_sub.idx]),
                        },
                    )
    return GroupStructure(
        "other",
        n,
        {"abelian": G.is_abelian(), "abelianization": list(abelianization(G))},
        {},
    )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _elementary_basis(G: FiniteGroup):
    basis = []
    span = {0}
    for i in range(1, G.order):
        if i not in span:
            basis.append(G.element(i))
            span = G._closure_idx([b.idx for b in basis])
            if len(span) == G.order:
                break
    return tuple(basis)


# ---------------------------------------------------------------------------
# Abelianization.


def _quotient_table(G: FiniteGroup, normal_set: frozenset):
    table = G._table
    inv = G._inv
    for h in normal_set:
        for a in range(G.order):
            if table[table[a][h]][inv[a]] not in normal_set:
                raise InvariantViolation("quotient by a non-normal subgroup")
    k_sorted = sorted(normal_set)
    coset_of = {}
    reps = []
    for a in range(G.order):
        if a in coset_of:
            continue
        cid = len(reps)
        reps.append(a)
        for h in k_sorted:
            coset_of[table[a][h]] = cid
    q = len(reps)
    return [[coset_of[table[reps[a]][reps[b]]] for b in range(q)] for a in range(q)]


def _abelian_invariants_from_table(table) -> tuple:
    n = len(table)
    if n == 1:
        return ()
    orders = []
    for i in range(n):
        k, acc = 1, i
        while acc != 0:
            acc = table[acc][i]
            k += 1
        orders.append(k)
    d1 = max(orders)
    x = orders.index(d1)
    cyclic_set = set()
    acc = 0
    while True:
        cyclic_set.add(acc)
        acc = table[acc][x]
        if acc == 0:
            break
    coset_of = {}
    reps = []
    for a in range(n):
        if a in coset_of:
            continue
        cid = len(reps)
        reps.append(a)
        for h in cyclic_set:
            coset_of[table[a][h]] = cid
    q = len(reps)
    q_table = [[coset_of[table[reps[a]][reps[b]]] for b in range(q)] for a in range(q)]
    return (d1,) + _abelian_invariants_from_table(q_table)


def abelianization(G: FiniteGroup) -> tuple:
    """Invariant factors (largest first) of G modulo its commutator subgroup."""
    table = G._table
    inv = G._inv
    n = G.order
    comm_gens = set()
    for a in range(n):
        for b in range(a):
            comm_gens.add(table[table[inv[a]][inv[b]]][table[a][b]])
    comm_gens.discard(0)
    if not comm_gens:
        return _abelian_invariants_from_table(table)
    k_set = frozenset(G._closure_idx(sorted(comm_gens)))
    if len(k_set) == n:
        return ()
    return _abelian_invariants_from_table(_quotient_table(G, k_set))


# ---------------------------------------------------------------------------
# Catalog of groups of a given small order.

_SMALL_GROUPS_CACHE = {}

# Orders at which the catalog below provably lists every isomorphism type
# (cross-checked against the standard census counts in the test suite).
COMPLETE_CATALOG_ORDERS = frozenset(range(1, 16)) | {20, 21, 22, 25, 26, 28, 30, 33, 34, 35}


def _abelian_groups(n: int):
    factors = {}
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1

    def partitions(k):
        if k == 0:
            yield ()
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or rest[0] <= first:
                    yield (first,) + rest

    per_prime = [
        [(p, part) for part in partitions(e)] for p, e in sorted(factors.items())
    ]

    def combine(level):
        if level == len(per_prime):
            yield []
            return
        for p, part in per_prime[level]:
            for rest in combine(level + 1):
                yield [(p, exp) for exp in part] + rest

    if n == 1:
        return [cyclic(1)]
    letters = "abcdefghijkl"  # 2^12 = MAX_ORDER caps the factor count
    groups = []
    for combo in combine(0):
        orders = sorted((p ** e for p, e in combo), reverse=True)
        G = cyclic(orders[0], letters[0])
        for pos, extra in enumerate(orders[1:], start=1):
            G = direct_product(G, cyclic(extra, letters[pos]))
        G.name = "C" + "xC".join(str(o) for o in orders)
        groups.append(G)
    return groups


def divisors_of(n: int):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def small_groups(n: int):
    """Groups of order n from the built-in catalog, pairwise non-isomorphic.

    Complete for every order in COMPLETE_CATALOG_ORDERS; a best-effort list
    (abelian, dihedral, dicyclic, cyclic-by-cyclic, direct products, and the
    small permutation specials) elsewhere.
    """
    if n < 1 or n > MAX_ORDER:
        raise ValueError(f"order must be between 1 and {MAX_ORDER}")
    if n in _SMALL_GROUPS_CACHE:
        return list(_SMALL_GROUPS_CACHE[n])
    candidates = list(_abelian_groups(n))
    if n % 2 == 0 and n >= 6:
        candidates.append(dihedral(n))
    if n % 4 == 0 and n >= 8:
        candidates.append(dicyclic(n // 4))
    for a in divisors_of(n):
        b = n // a
        if a < 3 or b < 2:
            continue
        for t in range(2, a):
            if gcd(t, a) == 1 and pow(t, b, a) == 1:
                try:
                    candidates.append(semidirect_cyclic(a, b, t))
                except GroupConstructionError:
                    pass
    if n == 12:
        candidates.append(from_permutations(["perm (1 2 3)", "perm (1 2)(3 4)"]))
    if n == 24:
        candidates.append(from_permutations(["perm (1 2 3 4)", "perm (1 2)"]))
    if n == 60:
        candidates.append(from_permutations(["perm (1 2 3 4 5)", "perm (1 2 3)"]))
    for a in divisors_of(n):
        b = n // a
        if a < 2 or b < 2 or a > b:
            continue
        for G1 in small_groups(a):
            for G2 in small_groups(b):
                try:
                    candidates.append(direct_product(G1, G2))
                except GroupConstructionError:
                    pass
    distinct = []
    for G in candidates:
        if not any(is_isomorphic(G, H) for H in distinct):
            distinct.append(G)
    _SMALL_GROUPS_CACHE[n] = distinct
    return list(distinct)


def _require_automorphism(G: FiniteGroup, mapping):
    n = G.order
    if len(mapping) != n or sorted(mapping) != list(range(n)):
        raise GroupConstructionError("mapping is not a bijection on the group")
    table = G._table
    for a in range(n):
        ma = mapping[a]
        row = table[a]
        for b in range(n):
            if mapping[row[b]] != table[ma][mapping[b]]:
                raise GroupConstructionError(f"mapping is not multiplicative at ({a},{b})")
