"""Finite join-semilattices with a top element: carriers, orders, tables.

Everything in this package is exact, discrete arithmetic on small finite
structures; there is no floating point anywhere.  All values are immutable
after construction and every operation is a pure function, so algebras can
be shared freely across threads or worker processes without synchronization.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

UNDEF = None
UNDEF_TOKEN = "-"


class OrdalgError(Exception):
    """Base class for every error raised by this package."""


class StructureError(OrdalgError):
    """A value violates a structural invariant (bad order, bad table, ...)."""


class ParseError(OrdalgError):
    """An algebra file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(message)

    def __str__(self) -> str:
        if self.line is not None and self.col is not None:
            return f"line {self.line}, column {self.col}: {self.message}"
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


class ClassTag(str, Enum):
    """Which axiom system an algebra claims to satisfy."""

    JSL = "jsl"
    SECTIONED = "sectioned"
    NCIS = "ncis"
    SRS = "srs"
    RRS = "rrs"
    IALG = "ialg"
    RALG = "ralg"


@dataclass(frozen=True)
class Report:
    """Pass/fail verdict of a validator, with a witness for failures.

    ``witness`` holds element labels; ``lhs``/``rhs`` are the evaluated
    sides of the violated law (labels, ``-`` for undefined, or
    ``true``/``false`` for boolean sides).
    """

    ok: bool
    axiom: str = ""
    witness: tuple[str, ...] = ()
    lhs: str = ""
    rhs: str = ""
    note: str = ""

    @staticmethod
    def passing(note: str = "") -> "Report":
        return Report(True, note=note)

    @staticmethod
    def failing(axiom: str, witness: tuple[str, ...], lhs: str, rhs: str,
                note: str = "") -> "Report":
        return Report(False, axiom=axiom, witness=witness, lhs=lhs, rhs=rhs, note=note)

    def fail_line(self) -> str:
        """Stable machine-readable failure line (one line, key=value)."""
        w = ",".join(self.witness)
        return f"FAIL axiom={self.axiom} witness=({w}) lhs={self.lhs} rhs={self.rhs}"


@dataclass(frozen=True)
class Universe:
    """Carrier set: n distinct printable labels plus the top element's index."""

    labels: tuple[str, ...]
    top: int

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for lab in self.labels:
            if not lab or any(c.isspace() for c in lab):
                raise StructureError(f"invalid label {lab!r}")
            if lab == UNDEF_TOKEN:
                raise StructureError(f"label may not be the reserved token {UNDEF_TOKEN!r}")
            if lab in seen:
                raise StructureError(f"duplicate label '{lab}'")
            seen.add(lab)
        if not 0 <= self.top < len(self.labels):
            raise StructureError("top index out of range")

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class BinTable:
    """n x n operation table; ``None`` entries mark undefined (partial) spots."""

    values: tuple[tuple[int | None, ...], ...]
    total: bool

    def __post_init__(self) -> None:
        n = len(self.values)
        for row in self.values:
            if len(row) != n:
                raise StructureError("binary table is not square")
            for v in row:
                if v is None:
                    if self.total:
                        raise StructureError("undefined entry in total table")
                elif not 0 <= v < n:
                    raise StructureError("table entry out of range")

    def __getitem__(self, i: int) -> tuple[int | None, ...]:
        return self.values[i]

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int | None]], total: bool) -> "BinTable":
        return BinTable(tuple(tuple(row) for row in rows), total)


@dataclass(frozen=True)
class TernTable:
    """Total ternary table; ``values[i][j][k]`` is op(e_i, e_j, e_k)."""

    values: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        n = len(self.values)
        for plane in self.values:
            if len(plane) != n:
                raise StructureError("ternary table is not cubic")
            for row in plane:
                if len(row) != n:
                    raise StructureError("ternary table is not cubic")
                for v in row:
                    if not isinstance(v, int) or not 0 <= v < n:
                        raise StructureError("ternary table entry out of range")

    def __getitem__(self, i: int) -> tuple[tuple[int, ...], ...]:
        return self.values[i]


@dataclass(frozen=True)
class Algebra:
    """A finite join-semilattice with top, plus optional extra operations.

    ``leq`` and ``join`` are always present; the optional tables carry the
    partial meet, the implication, the partial product, and the two total
    ternary operations.  Published constructors (`build_algebra`, the file
    parser, the derivation maps) validate all structural invariants; the raw
    dataclass constructor trusts its arguments, which the test-suite uses to
    build deliberately broken tables for the validators.
    """

    universe: Universe
    leq: tuple[tuple[bool, ...], ...]
    join: BinTable
    meet: BinTable | None = None
    imp: BinTable | None = None
    prod: BinTable | None = None
    r: TernTable | None = None
    q: TernTable | None = None
    class_tag: ClassTag = ClassTag.JSL
    name: str = ""

    @property
    def n(self) -> int:
        return self.universe.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.universe.labels

    @property
    def top(self) -> int:
        return self.universe.top

    def label(self, i: int) -> str:
        return self.universe.labels[i]

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def downsets(self) -> tuple[frozenset[int], ...]:
        n = self.n
        return tuple(frozenset(i for i in range(n) if self.leq[i][j]) for j in range(n))

    @cached_property
    def upsets(self) -> tuple[frozenset[int], ...]:
        n = self.n
        return tuple(frozenset(j for j in range(n) if self.leq[i][j]) for i in range(n))

    def tables(self) -> tuple[tuple[str, BinTable | TernTable], ...]:
        """Present operation tables in canonical slot order."""
        out = [("join", self.join)]
        for name in ("meet", "imp", "prod", "r", "q"):
            t = getattr(self, name)
            if t is not None:
                out.append((name, t))
        return tuple(out)


# ---------------------------------------------------------------------------
# order utilities

def transitive_reflexive_closure(n: int, pairs: Iterable[tuple[int, int]],
                                 labels: Sequence[str]) -> tuple[tuple[bool, ...], ...]:
    """Close the given strict pairs reflexively and transitively.

    Raises on antisymmetry violations (a cycle in the input pairs).
    """
    m = [[False] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = True
    for a, b in pairs:
        m[a][b] = True
    changed = True
    while changed:
        changed = False
        for k in range(n):
            mk = m[k]
            for i in range(n):
                if m[i][k]:
                    mi = m[i]
                    for j in range(n):
                        if mk[j] and not mi[j]:
                            mi[j] = True
                            changed = True
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] and m[j][i]:
                raise StructureError(
                    f"order not antisymmetric: {labels[i]} and {labels[j]} form a cycle")
    return tuple(tuple(row) for row in m)


def check_partial_order(leq: Sequence[Sequence[bool]], labels: Sequence[str]) -> None:
    n = len(leq)
    for i in range(n):
        if not leq[i][i]:
            raise StructureError(f"order not reflexive at {labels[i]}")
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise StructureError(
                    f"order not antisymmetric: {labels[i]} and {labels[j]} form a cycle")
    for i in range(n):
        for j in range(n):
            if leq[i][j]:
                for k in range(n):
                    if leq[j][k] and not leq[i][k]:
                        raise StructureError(
                            f"order not transitive at ({labels[i]},{labels[j]},{labels[k]})")


def find_top(leq: Sequence[Sequence[bool]], labels: Sequence[str]) -> int:
    n = len(leq)
    tops = [j for j in range(n) if all(leq[i][j] for i in range(n))]
    if len(tops) != 1:
        raise StructureError("no unique top")
    return tops[0]


def lub_table(leq: Sequence[Sequence[bool]], labels: Sequence[str]) -> BinTable:
    """Join table from the order; every pair must have a least upper bound."""
    n = len(leq)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            ubs = [u for u in range(n) if leq[i][u] and leq[j][u]]
            least = [u for u in ubs if all(leq[u][v] for v in ubs)]
            if not least:
                raise StructureError(
                    f"no least upper bound for ({labels[i]},{labels[j]})")
            row.append(least[0])
        rows.append(row)
    return BinTable.from_rows(rows, total=True)


def glb_table(leq: Sequence[Sequence[bool]], labels: Sequence[str]) -> BinTable:
    """Partial meet table: greatest lower bound exactly on bounded pairs."""
    n = len(leq)
    downs = [frozenset(i for i in range(n) if leq[i][j]) for j in range(n)]
    rows = []
    for i in range(n):
        row: list[int | None] = []
        for j in range(n):
            clb = downs[i] & downs[j]
            if not clb:
                row.append(None)
                continue
            greatest = [u for u in clb if all(leq[v][u] for v in clb)]
            if not greatest:
                raise StructureError(f"meet not unique for ({labels[i]},{labels[j]})")
            row.append(greatest[0])
        rows.append(row)
    return BinTable.from_rows(rows, total=False)


def order_from_join(values: Sequence[Sequence[int]]) -> tuple[tuple[bool, ...], ...]:
    n = len(values)
    return tuple(tuple(values[i][j] == j for j in range(n)) for i in range(n))


def default_labels(n: int) -> tuple[str, ...]:
    """Generated-model labels: letters for the body, ``1`` for the top."""
    if n == 1:
        return ("1",)
    letters = "abcdefghijklmnopqrstuvwxyz"
    return tuple(letters[:n - 1]) + ("1",)


# ---------------------------------------------------------------------------
# basic operations

def leq(alg: Algebra, x: int, y: int) -> bool:
    """x <= y, read off the join table (x v y = y)."""
    return alg.join[x][y] == y


def join(alg: Algebra, x: int, y: int) -> int:
    return alg.join[x][y]  # type: ignore[return-value]


def common_lower_bounds(alg: Algebra, x: int, y: int) -> frozenset[int]:
    return alg.downsets[x] & alg.downsets[y]


def partial_meet(alg: Algebra, x: int, y: int) -> int | None:
    """Greatest common lower bound, or UNDEF when the pair is unbounded."""
    if alg.meet is not None:
        return alg.meet[x][y]
    clb = alg.downsets[x] & alg.downsets[y]
    if not clb:
        return None
    greatest = [u for u in clb if all(alg.leq[v][u] for v in clb)]
    if not greatest:
        raise StructureError(
            f"meet not unique for ({alg.label(x)},{alg.label(y)})")
    return greatest[0]


def section(alg: Algebra, x: int) -> tuple[int, ...]:
    """The principal filter [x, 1], sorted by element index."""
    return tuple(sorted(alg.upsets[x]))


def validate_join_semilattice(alg: Algebra) -> Report:
    """Check idempotence, commutativity, associativity, order consistency
    and top absorption of the join table.  First violation in scan order wins.
    """
    n, top = alg.n, alg.top
    jv = alg.join.values
    lq = alg.leq
    lab = alg.label
    for x in range(n):
        if jv[x][x] != x:
            return Report.failing("join-idempotent", (lab(x),), lab(jv[x][x]), lab(x))
    for x in range(n):
        for y in range(n):
            if jv[x][y] != jv[y][x]:
                return Report.failing("join-commutative", (lab(x), lab(y)),
                                      lab(jv[x][y]), lab(jv[y][x]))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                l = jv[x][jv[y][z]]
                rr = jv[jv[x][y]][z]
                if l != rr:
                    return Report.failing("join-associative", (lab(x), lab(y), lab(z)),
                                          lab(l), lab(rr))
    for x in range(n):
        for y in range(n):
            j = jv[x][y]
            if not (lq[x][j] and lq[y][j]):
                return Report.failing("join-order", (lab(x), lab(y)), lab(j),
                                      "upper bound")
            for u in range(n):
                if lq[x][u] and lq[y][u] and not lq[j][u]:
                    return Report.failing("join-order", (lab(x), lab(y)), lab(j),
                                          lab(u), note="join is not the least upper bound")
            if lq[x][y] != (j == y):
                return Report.failing("join-order", (lab(x), lab(y)), lab(j), lab(y),
                                      note="order and join table disagree")
    for x in range(n):
        if jv[x][top] != top:
            return Report.failing("top-absorbing", (lab(x),), lab(jv[x][top]), lab(top))
    return Report.passing("join-semilattice laws hold")


# ---------------------------------------------------------------------------
# construction

def build_algebra(labels: Sequence[str], *,
                  order_pairs: Iterable[tuple[int, int]] | None = None,
                  leq_matrix: Sequence[Sequence[bool]] | None = None,
                  join_values: Sequence[Sequence[int]] | None = None,
                  meet_values: Sequence[Sequence[int | None]] | None = None,
                  imp_values: Sequence[Sequence[int]] | None = None,
                  prod_values: Sequence[Sequence[int | None]] | None = None,
                  r_values=None, q_values=None,
                  class_tag: ClassTag | None = None,
                  name: str = "") -> Algebra:
    """Validated constructor.

    The order may come from explicit pairs, a full relation matrix, or the
    join table; the join table is derived from the order when absent.  All
    structural invariants are checked: the order axioms, unique top, the
    join-semilattice laws, and agreement of a supplied meet table with the
    genuine greatest lower bounds.
    """
    labels = tuple(labels)
    n = len(labels)
    if n == 0:
        raise StructureError("empty universe")

    if leq_matrix is not None:
        lq = tuple(tuple(bool(v) for v in row) for row in leq_matrix)
    elif order_pairs is not None:
        lq = transitive_reflexive_closure(n, order_pairs, labels)
    elif join_values is not None:
        lq = order_from_join(join_values)
    else:
        lq = tuple(tuple(i == j for j in range(n)) for i in range(n))

    check_partial_order(lq, labels)
    top = find_top(lq, labels)
    universe = Universe(labels, top)

    order_given = leq_matrix is not None or order_pairs is not None
    if join_values is not None:
        jt = BinTable.from_rows(join_values, total=True)
    else:
        jt = lub_table(lq, labels)

    alg = Algebra(universe, lq, jt, class_tag=class_tag or ClassTag.JSL, name=name)
    rep = validate_join_semilattice(alg)
    if not rep.ok:
        if order_given and join_values is not None and rep.axiom == "join-order":
            raise StructureError("join table does not match the order at "
                                 f"({','.join(rep.witness)})")
        raise StructureError(f"not a join-semilattice: {rep.axiom} at "
                             f"({','.join(rep.witness)})")

    meet_t = None
    if meet_values is not None:
        meet_t = BinTable.from_rows(meet_values, total=False)
        true_meet = glb_table(lq, labels)
        for i in range(n):
            for j in range(n):
                got, want = meet_t.values[i][j], true_meet.values[i][j]
                if (got is None) != (want is None):
                    raise StructureError(
                        f"meet table domain mismatch at ({labels[i]},{labels[j]})")
                if got != want:
                    raise StructureError(
                        "meet table does not match the greatest lower bound at "
                        f"({labels[i]},{labels[j]})")

    imp_t = BinTable.from_rows(imp_values, total=True) if imp_values is not None else None
    prod_t = BinTable.from_rows(prod_values, total=False) if prod_values is not None else None
    r_t = TernTable(tuple(tuple(tuple(row) for row in plane) for plane in r_values)) \
        if r_values is not None else None
    q_t = TernTable(tuple(tuple(tuple(row) for row in plane) for plane in q_values)) \
        if q_values is not None else None

    tag = class_tag or infer_class_tag(meet_t, imp_t, prod_t, r_t, q_t)
    return Algebra(universe, lq, jt, meet_t, imp_t, prod_t, r_t, q_t, tag, name)


def infer_class_tag(meet, imp, prod, r, q) -> ClassTag:
    if r is not None:
        return ClassTag.IALG
    if q is not None:
        return ClassTag.RALG
    if prod is not None:
        return ClassTag.RRS
    if imp is not None:
        return ClassTag.NCIS
    if meet is not None:
        return ClassTag.SECTIONED
    return ClassTag.JSL


def ensure_meet(alg: Algebra) -> Algebra:
    """Return an equal algebra that carries the derived partial meet table."""
    if alg.meet is not None:
        return alg
    return dataclasses.replace(alg, meet=glb_table(alg.leq, alg.labels))


def project_to_class(alg: Algebra, tag: ClassTag) -> Algebra:
    """Reduct of the algebra to the signature of the given class.

    Missing derivable tables (the meet) are filled in; missing essential
    tables raise.
    """
    def need(name: str):
        t = getattr(alg, name)
        if t is None:
            raise StructureError(f"class {tag.value} requires a {name} table")
        return t

    kw: dict = dict(meet=None, imp=None, prod=None, r=None, q=None,
                    class_tag=tag)
    if tag == ClassTag.JSL:
        pass
    elif tag == ClassTag.SECTIONED:
        kw["meet"] = ensure_meet(alg).meet
    elif tag == ClassTag.NCIS:
        kw["meet"] = ensure_meet(alg).meet
        kw["imp"] = need("imp")
    elif tag in (ClassTag.RRS, ClassTag.SRS):
        kw["imp"] = need("imp")
        kw["prod"] = need("prod")
    elif tag == ClassTag.IALG:
        kw["imp"] = need("imp")
        kw["r"] = need("r")
    elif tag == ClassTag.RALG:
        kw["imp"] = need("imp")
        kw["q"] = need("q")
    return dataclasses.replace(alg, **kw)


def relabel(alg: Algebra, new_of_old: Sequence[int],
            labels: Sequence[str] | None = None) -> Algebra:
    """Apply the relabeling ``old index -> new index`` to every component."""
    n = alg.n
    p = list(new_of_old)
    inv = [0] * n
    for old, new in enumerate(p):
        inv[new] = old
    new_labels = tuple(labels) if labels is not None else \
        tuple(alg.labels[inv[i]] for i in range(n))

    def permute_bin(t: BinTable | None) -> BinTable | None:
        if t is None:
            return None
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                v = t.values[inv[i]][inv[j]]
                row.append(None if v is None else p[v])
            rows.append(tuple(row))
        return BinTable(tuple(rows), t.total)

    def permute_tern(t: TernTable | None) -> TernTable | None:
        if t is None:
            return None
        vals = tuple(tuple(tuple(p[t.values[inv[i]][inv[j]][inv[k]]]
                                 for k in range(n)) for j in range(n))
                     for i in range(n))
        return TernTable(vals)

    lq = tuple(tuple(alg.leq[inv[i]][inv[j]] for j in range(n)) for i in range(n))
    return Algebra(Universe(new_labels, p[alg.top]), lq,
                   permute_bin(alg.join), permute_bin(alg.meet),
                   permute_bin(alg.imp), permute_bin(alg.prod),
                   permute_tern(alg.r), permute_tern(alg.q),
                   alg.class_tag, alg.name)


def first_table_difference(a: Algebra, b: Algebra):
    """First differing operation-table cell between two algebras.

    Returns ``(table, coords, left, right)`` with label-rendered values, or
    ``None`` when all present tables agree.  A table present on one side
    only is reported with coords ``()``.
    """
    if a.labels != b.labels:
        return ("elements", (), " ".join(a.labels), " ".join(b.labels))
    n = a.n

    def tok(alg: Algebra, v: int | None) -> str:
        return UNDEF_TOKEN if v is None else alg.label(v)

    for name in ("join", "meet", "imp", "prod"):
        ta, tb = getattr(a, name), getattr(b, name)
        if (ta is None) != (tb is None):
            return (name, (), "present" if ta is not None else UNDEF_TOKEN,
                    "present" if tb is not None else UNDEF_TOKEN)
        if ta is None:
            continue
        for i in range(n):
            for j in range(n):
                if ta.values[i][j] != tb.values[i][j]:
                    return (name, (a.label(i), a.label(j)),
                            tok(a, ta.values[i][j]), tok(b, tb.values[i][j]))
    for name in ("r", "q"):
        ta, tb = getattr(a, name), getattr(b, name)
        if (ta is None) != (tb is None):
            return (name, (), "present" if ta is not None else UNDEF_TOKEN,
                    "present" if tb is not None else UNDEF_TOKEN)
        if ta is None:
            continue
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if ta.values[i][j][k] != tb.values[i][j][k]:
                        return (name, (a.label(i), a.label(j), a.label(k)),
                                a.label(ta.values[i][j][k]), b.label(tb.values[i][j][k]))
    return None
