"""Congruence lattices of the total algebras and their Maltsev-style verdicts.

Congruence analysis only applies to the total signatures (join, arrow, and
one ternary operation); the partial-operation classes are rejected, since a
compatible-partition notion for them is a different theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Algebra, Report, StructureError


@dataclass(frozen=True, order=True)
class Partition:
    """Equivalence relation in canonical form: ``class_of[i]`` is the
    smallest element of i's class."""

    class_of: tuple[int, ...]

    @staticmethod
    def identity(n: int) -> "Partition":
        return Partition(tuple(range(n)))

    @staticmethod
    def single_class(n: int) -> "Partition":
        return Partition((0,) * n)

    @staticmethod
    def from_parent(parent: list[int]) -> "Partition":
        n = len(parent)

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        rep: dict[int, int] = {}
        out = [0] * n
        for i in range(n):
            r = find(i)
            if r not in rep:
                rep[r] = i
            out[i] = rep[r]
        return Partition(tuple(out))

    @staticmethod
    def from_blocks(n: int, blocks) -> "Partition":
        parent = list(range(n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for block in blocks:
            block = list(block)
            for other in block[1:]:
                a, b = find(block[0]), find(other)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return Partition.from_parent(parent)

    @property
    def n(self) -> int:
        return len(self.class_of)

    def relates(self, i: int, j: int) -> bool:
        return self.class_of[i] == self.class_of[j]

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        groups: dict[int, list[int]] = {}
        for i, c in enumerate(self.class_of):
            groups.setdefault(c, []).append(i)
        return tuple(tuple(groups[c]) for c in sorted(groups))

    def block_of(self, i: int) -> frozenset[int]:
        c = self.class_of[i]
        return frozenset(j for j, cj in enumerate(self.class_of) if cj == c)

    @property
    def num_classes(self) -> int:
        return len(set(self.class_of))

    def meet(self, other: "Partition") -> "Partition":
        pairs: dict[tuple[int, int], int] = {}
        out = [0] * self.n
        for i in range(self.n):
            key = (self.class_of[i], other.class_of[i])
            if key not in pairs:
                pairs[key] = i
            out[i] = pairs[key]
        return Partition(tuple(out))

    def join_with(self, other: "Partition") -> "Partition":
        parent = list(self.class_of)

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(self.n):
            a, b = find(i), find(other.class_of[i])
            if a != b:
                parent[max(a, b)] = min(a, b)
        return Partition.from_parent(parent)

    def refines(self, other: "Partition") -> bool:
        return all(other.class_of[i] == other.class_of[self.class_of[i]]
                   for i in range(self.n))

    def notation(self, labels) -> str:
        return "".join("{" + ",".join(labels[i] for i in blk) + "}"
                       for blk in self.blocks())


def _total_ops(alg: Algebra):
    """Basic operations of the total signature; rejects partial tables."""
    if alg.meet is not None or alg.prod is not None:
        raise ValueError("congruence analysis requires total operations only "
                         "(partial meet/product present)")
    if alg.imp is None:
        raise ValueError("congruence analysis requires an imp table")
    tern = alg.r if alg.r is not None else alg.q
    if tern is None:
        raise ValueError("congruence analysis requires an r or q table")
    return [(2, alg.join.values), (2, alg.imp.values)], tern.values


def principal_congruence(alg: Algebra, a: int, b: int) -> Partition:
    """Smallest congruence identifying a and b.

    Closure of {(a, b)} under the equivalence laws and single-argument
    substitution into each basic operation (unary polynomial translations).
    """
    binops, tern = _total_ops(alg)
    n = alg.n
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    pending = [(a, b)]
    while pending:
        u, v = pending.pop()
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        parent[max(ru, rv)] = min(ru, rv)
        for _, tbl in binops:
            for c in range(n):
                pending.append((tbl[u][c], tbl[v][c]))
                pending.append((tbl[c][u], tbl[c][v]))
        for c in range(n):
            for d in range(n):
                pending.append((tern[u][c][d], tern[v][c][d]))
                pending.append((tern[c][u][d], tern[c][v][d]))
                pending.append((tern[c][d][u], tern[c][d][v]))
    return Partition.from_parent(parent)


@dataclass(frozen=True)
class ConLattice:
    """All congruences, ordered by refinement."""

    congruences: tuple[Partition, ...]

    @property
    def size(self) -> int:
        return len(self.congruences)

    def refinement_matrix(self) -> tuple[tuple[bool, ...], ...]:
        cs = self.congruences
        return tuple(tuple(a.refines(b) for b in cs) for a in cs)


def congruence_lattice(alg: Algebra) -> ConLattice:
    """All congruences, generated as joins of the principal ones."""
    n = alg.n
    found = {Partition.identity(n)}
    for a, b in combinations(range(n), 2):
        found.add(principal_congruence(alg, a, b))
    frontier = list(found)
    while frontier:
        fresh = []
        for p in frontier:
            for q in list(found):
                j = p.join_with(q)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
        frontier = fresh
    return ConLattice(tuple(sorted(found)))


def _pairs(p: Partition, n: int) -> frozenset[tuple[int, int]]:
    return frozenset((i, j) for i in range(n) for j in range(n) if p.relates(i, j))


def _compose(left: frozenset[tuple[int, int]],
             right: frozenset[tuple[int, int]], n: int) -> frozenset[tuple[int, int]]:
    by_first: dict[int, set[int]] = {}
    for k, j in right:
        by_first.setdefault(k, set()).add(j)
    out = set()
    for i, k in left:
        for j in by_first.get(k, ()):
            out.add((i, j))
    return frozenset(out)


@dataclass(frozen=True)
class MaltsevReport:
    three_permutable: bool
    con_distributive: bool
    weakly_regular: bool
    witness: str = ""

    @property
    def all_true(self) -> bool:
        return self.three_permutable and self.con_distributive and self.weakly_regular


def maltsev_report(alg: Algebra, lattice: ConLattice | None = None) -> MaltsevReport:
    """3-permutability, distributivity of the congruence lattice, and weak
    regularity (the class of the top element determines the congruence)."""
    lat = lattice if lattice is not None else congruence_lattice(alg)
    n = alg.n
    cs = lat.congruences

    three_perm = True
    witness = ""
    rels = [_pairs(p, n) for p in cs]
    for p, rp in zip(cs, rels):
        for q, rq in zip(cs, rels):
            left = _compose(_compose(rp, rq, n), rp, n)
            right = _compose(_compose(rq, rp, n), rq, n)
            if left != right:
                three_perm = False
                witness = f"3-permutability fails for {p.class_of} and {q.class_of}"
                break
        if not three_perm:
            break

    distributive = True
    for a in cs:
        for b in cs:
            for c in cs:
                if a.meet(b.join_with(c)) != a.meet(b).join_with(a.meet(c)):
                    distributive = False
                    if not witness:
                        witness = (f"distributivity fails for {a.class_of}, "
                                   f"{b.class_of}, {c.class_of}")
                    break
            if not distributive:
                break
        if not distributive:
            break

    weakly_regular = True
    seen: dict[frozenset[int], Partition] = {}
    for p in cs:
        blk = p.block_of(alg.top)
        if blk in seen:
            weakly_regular = False
            if not witness:
                witness = (f"congruences {seen[blk].class_of} and {p.class_of} "
                           "share the class of the top element")
            break
        seen[blk] = p

    return MaltsevReport(three_perm, distributive, weakly_regular, witness)


def term_witness_check(alg: Algebra) -> Report:
    """Evaluate the explicit term schemes certifying the congruence verdicts.

    (a) 3-permutability terms t1(x,y,z) = r(z, y->x, x), t2(x,y,z) =
        r(x, y->z, z): t1(x,y,y) = x, t1(x,x,y) = t2(x,y,y), t2(x,x,y) = y.
    (b) a length-3 chain of terms for distributivity, t0 = x,
        t1(x,y,z) = r(z,y,x), t2(x,y,z) = r(x, y->z, z), t3 = z, with
        t1(x,x,y) = x, t1(x,y,y) = t2(x,y,y), t2(x,x,y) = y and
        ti(x,y,x) = x for i = 1, 2.
    (c) weak-regularity terms x->y and y->x: both equal 1 exactly when x = y.

    On a ternary-product algebra, q replaces r and scheme (a) requires the
    divisibility identity q(x, x->y, y) = y.
    """
    if alg.imp is None:
        raise StructureError("term check requires an imp table")
    tern = alg.r if alg.r is not None else alg.q
    if tern is None:
        raise StructureError("term check requires an r or q table")
    is_q = alg.r is None
    n, top = alg.n, alg.top
    lab = alg.label
    tv = tern.values
    iv = alg.imp.values

    if is_q:
        for x in range(n):
            for y in range(n):
                if tv[x][iv[x][y]][y] != y:
                    return Report.failing("(a)", (lab(x), lab(y)),
                                          lab(tv[x][iv[x][y]][y]), lab(y),
                                          note="scheme (a) requires the subvariety "
                                               "identity q(x,x->y,y)=y")

    def t1a(x: int, y: int, z: int) -> int:
        return tv[z][iv[y][x]][x]

    def t2a(x: int, y: int, z: int) -> int:
        return tv[x][iv[y][z]][z]

    for x in range(n):
        for y in range(n):
            if t1a(x, y, y) != x:
                return Report.failing("(a)", (lab(x), lab(y)), lab(t1a(x, y, y)), lab(x),
                                      note="t1(x,y,y) = x fails")
            if t1a(x, x, y) != t2a(x, y, y):
                return Report.failing("(a)", (lab(x), lab(y)),
                                      lab(t1a(x, x, y)), lab(t2a(x, y, y)),
                                      note="t1(x,x,y) = t2(x,y,y) fails")
            if t2a(x, x, y) != y:
                return Report.failing("(a)", (lab(x), lab(y)), lab(t2a(x, x, y)), lab(y),
                                      note="t2(x,x,y) = y fails")

    def t1b(x: int, y: int, z: int) -> int:
        return tv[z][y][x]

    def t2b(x: int, y: int, z: int) -> int:
        return tv[x][iv[y][z]][z]

    for x in range(n):
        for y in range(n):
            if t1b(x, x, y) != x:
                return Report.failing("(b)", (lab(x), lab(y)), lab(t1b(x, x, y)), lab(x),
                                      note="t1(x,x,y) = x fails")
            if t1b(x, y, y) != t2b(x, y, y):
                return Report.failing("(b)", (lab(x), lab(y)),
                                      lab(t1b(x, y, y)), lab(t2b(x, y, y)),
                                      note="t1(x,y,y) = t2(x,y,y) fails")
            if t2b(x, x, y) != y:
                return Report.failing("(b)", (lab(x), lab(y)), lab(t2b(x, x, y)), lab(y),
                                      note="t2(x,x,y) = y fails")
            if t1b(x, y, x) != x:
                return Report.failing("(b)", (lab(x), lab(y)), lab(t1b(x, y, x)), lab(x),
                                      note="t1(x,y,x) = x fails")
            if t2b(x, y, x) != x:
                return Report.failing("(b)", (lab(x), lab(y)), lab(t2b(x, y, x)), lab(x),
                                      note="t2(x,y,x) = x fails")

    for x in range(n):
        for y in range(n):
            both_top = iv[x][y] == top and iv[y][x] == top
            if both_top != (x == y):
                return Report.failing("(c)", (lab(x), lab(y)),
                                      "true" if both_top else "false",
                                      "true" if x == y else "false",
                                      note="x->y = y->x = 1 must hold exactly when x = y")
    return Report.passing("all term schemes hold pointwise")
