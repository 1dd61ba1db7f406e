"""Total-operation presentations of the partial structures.

The partial meet is replaced by the total ternary ``r(x,y,z) = (x v z) ^
(y v z)`` (always defined: z bounds both arguments), the partial product by
``q(x,y,z) = (x v z) . (y v z)``.  Both presentations are equational, and
the conversions to and from the partial form are mutually inverse.
"""

from __future__ import annotations

import dataclasses

from .core import (Algebra, BinTable, ClassTag, Report, StructureError,
                   TernTable, common_lower_bounds, ensure_meet, leq,
                   validate_join_semilattice)

IAlgebra = Algebra  # alias: total imp and total r, tag "ialg"
RAlgebra = Algebra  # alias: total imp and total q, tag "ralg"


def _require(alg: Algebra, *names: str) -> None:
    for name in names:
        if getattr(alg, name) is None:
            raise StructureError(f"this operation requires a {name} table")


def ialgebra_from_ncis(alg: Algebra) -> Algebra:
    """Total ternary meet-of-joins table from the partial meet."""
    _require(alg, "imp")
    src = ensure_meet(alg)
    n = src.n
    jv, mv = src.join.values, src.meet.values
    vals = tuple(tuple(tuple(mv[jv[i][k]][jv[j][k]] for k in range(n))
                       for j in range(n)) for i in range(n))
    return dataclasses.replace(src, meet=None, r=TernTable(vals),
                               class_tag=ClassTag.IALG)


def ncis_from_ialgebra(alg: Algebra) -> Algebra:
    """Partial meet recovered from r; every common lower bound must give the
    same value, otherwise r is not well-defined and the input violates the
    ternary identities."""
    _require(alg, "imp", "r")
    n = alg.n
    rv = alg.r.values
    rows: list[list[int | None]] = []
    for x in range(n):
        row: list[int | None] = []
        for y in range(n):
            clb = sorted(common_lower_bounds(alg, x, y))
            if not clb:
                row.append(None)
                continue
            vals = {rv[x][y][z]: z for z in clb}
            if len(vals) > 1:
                vs = sorted(vals)
                raise StructureError(
                    f"r not well-defined at ({alg.label(x)},{alg.label(y)}): "
                    f"z={alg.label(vals[vs[0]])} gives {alg.label(vs[0])}, "
                    f"z'={alg.label(vals[vs[1]])} gives {alg.label(vs[1])}")
            row.append(next(iter(vals)))
        rows.append(row)
    return dataclasses.replace(alg, meet=BinTable.from_rows(rows, total=False),
                               r=None, class_tag=ClassTag.NCIS)


def validate_ialgebra(alg: Algebra) -> Report:
    """The ten ternary-meet identities; first violated identity in scan
    order is reported with its tuple.

    (1')  y <= x->y
    (2')  r(x, x->y, y) = y
    (3')  (x v y)->y = x->y
    (4')  y <= (x v z) -> r(x,y,z)
    (5')  r(x,y,z) <= x v z
    (6')  r(x,y,z) <= y v z
    (7')  r(x, x v y, z) = x v z
    (8')  r(x,y,z) = r(x v z, y v z, z)
    (9')  z <= r(x,y,z)
    (10') r(u, r(x,y,z), z) = r(r(u,x,z), r(u,y,z), z)
    """
    _require(alg, "imp", "r")
    base = validate_join_semilattice(alg)
    if not base.ok:
        return base
    n = alg.n
    lab = alg.label
    jv, iv, rv = alg.join.values, alg.imp.values, alg.r.values

    for x in range(n):
        for y in range(n):
            if not leq(alg, y, iv[x][y]):
                return Report.failing("(1')", (lab(x), lab(y)), lab(y), lab(iv[x][y]),
                                      note="expected lhs <= rhs")
    for x in range(n):
        for y in range(n):
            v = rv[x][iv[x][y]][y]
            if v != y:
                return Report.failing("(2')", (lab(x), lab(y)), lab(v), lab(y))
    for x in range(n):
        for y in range(n):
            if iv[jv[x][y]][y] != iv[x][y]:
                return Report.failing("(3')", (lab(x), lab(y)),
                                      lab(iv[jv[x][y]][y]), lab(iv[x][y]))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not leq(alg, y, iv[jv[x][z]][rv[x][y][z]]):
                    return Report.failing("(4')", (lab(x), lab(y), lab(z)),
                                          lab(y), lab(iv[jv[x][z]][rv[x][y][z]]),
                                          note="expected lhs <= rhs")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not leq(alg, rv[x][y][z], jv[x][z]):
                    return Report.failing("(5')", (lab(x), lab(y), lab(z)),
                                          lab(rv[x][y][z]), lab(jv[x][z]),
                                          note="expected lhs <= rhs")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not leq(alg, rv[x][y][z], jv[y][z]):
                    return Report.failing("(6')", (lab(x), lab(y), lab(z)),
                                          lab(rv[x][y][z]), lab(jv[y][z]),
                                          note="expected lhs <= rhs")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if rv[x][jv[x][y]][z] != jv[x][z]:
                    return Report.failing("(7')", (lab(x), lab(y), lab(z)),
                                          lab(rv[x][jv[x][y]][z]), lab(jv[x][z]))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if rv[x][y][z] != rv[jv[x][z]][jv[y][z]][z]:
                    return Report.failing("(8')", (lab(x), lab(y), lab(z)),
                                          lab(rv[x][y][z]),
                                          lab(rv[jv[x][z]][jv[y][z]][z]))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not leq(alg, z, rv[x][y][z]):
                    return Report.failing("(9')", (lab(x), lab(y), lab(z)),
                                          lab(z), lab(rv[x][y][z]),
                                          note="expected lhs <= rhs")
    for u in range(n):
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    l = rv[u][rv[x][y][z]][z]
                    rr = rv[rv[u][x][z]][rv[u][y][z]][z]
                    if l != rr:
                        return Report.failing("(10')", (lab(u), lab(x), lab(y), lab(z)),
                                              lab(l), lab(rr))
    return Report.passing("ternary-meet identities (1')-(10') hold")


def ralgebra_from_rrs(alg: Algebra) -> Algebra:
    """Total ternary product-of-joins table from the partial product."""
    _require(alg, "imp", "prod")
    n = alg.n
    jv, pv = alg.join.values, alg.prod.values
    vals = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                v = pv[jv[i][k]][jv[j][k]]
                if v is None:
                    raise StructureError(
                        "product undefined on a bounded pair at "
                        f"({alg.label(i)},{alg.label(j)},{alg.label(k)})")
                row.append(v)
            plane.append(tuple(row))
        vals.append(tuple(plane))
    return dataclasses.replace(alg, prod=None, q=TernTable(tuple(vals)),
                               class_tag=ClassTag.RALG)


def rrs_from_ralgebra(alg: Algebra) -> Algebra:
    """Partial product recovered from q, with the same well-definedness
    requirement as `ncis_from_ialgebra`."""
    _require(alg, "imp", "q")
    n = alg.n
    qv = alg.q.values
    rows: list[list[int | None]] = []
    for x in range(n):
        row: list[int | None] = []
        for y in range(n):
            clb = sorted(common_lower_bounds(alg, x, y))
            if not clb:
                row.append(None)
                continue
            vals = {qv[x][y][z]: z for z in clb}
            if len(vals) > 1:
                vs = sorted(vals)
                raise StructureError(
                    f"q not well-defined at ({alg.label(x)},{alg.label(y)}): "
                    f"z={alg.label(vals[vs[0]])} gives {alg.label(vs[0])}, "
                    f"z'={alg.label(vals[vs[1]])} gives {alg.label(vs[1])}")
            row.append(next(iter(vals)))
        rows.append(row)
    return dataclasses.replace(alg, prod=BinTable.from_rows(rows, total=False),
                               q=None, class_tag=ClassTag.RRS)


def validate_ralgebra(alg: Algebra, subvariety: bool = False) -> Report:
    """The eleven ternary-product identities (20)-(30); with ``subvariety``
    also the identity q(x, x->y, y) = y.

    (20) z <= q(x,y,z)
    (21) q(z v u v x, z v u v y, z) = q(z v u v x, z v u v y, z v u)
    (22) q(x,1,x) = q(1,x,x) = x
    (23) q(x,y,z) = q(y,x,z)
    (24) q(q(x,y,u), z, u) = q(x, q(y,z,u), u)
    (25) q(x,z,u) <= q(x v y, z, u)
    (26) x v z <= y -> (q(x,y,z) v z)
    (27) x <= y -> x
    (28) q(x, x->y, y) <= y
    (29) q(x,y,z) = q(x v z, y v z, z)
    (30) (x v y)->y = x->y
    """
    _require(alg, "imp", "q")
    base = validate_join_semilattice(alg)
    if not base.ok:
        return base
    n, top = alg.n, alg.top
    lab = alg.label
    jv, iv, qv = alg.join.values, alg.imp.values, alg.q.values

    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not leq(alg, z, qv[x][y][z]):
                    return Report.failing("(20)", (lab(x), lab(y), lab(z)),
                                          lab(z), lab(qv[x][y][z]),
                                          note="expected lhs <= rhs")
    for z in range(n):
        for u in range(n):
            zu = jv[z][u]
            for x in range(n):
                for y in range(n):
                    a, b = jv[zu][x], jv[zu][y]
                    if qv[a][b][z] != qv[a][b][zu]:
                        return Report.failing("(21)", (lab(z), lab(u), lab(x), lab(y)),
                                              lab(qv[a][b][z]), lab(qv[a][b][zu]))
    for x in range(n):
        if qv[x][top][x] != x or qv[top][x][x] != x:
            bad = qv[x][top][x] if qv[x][top][x] != x else qv[top][x][x]
            return Report.failing("(22)", (lab(x),), lab(bad), lab(x))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if qv[x][y][z] != qv[y][x][z]:
                    return Report.failing("(23)", (lab(x), lab(y), lab(z)),
                                          lab(qv[x][y][z]), lab(qv[y][x][z]))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for u in range(n):
                    l = qv[qv[x][y][u]][z][u]
                    rr = qv[x][qv[y][z][u]][u]
                    if l != rr:
                        return Report.failing("(24)", (lab(x), lab(y), lab(z), lab(u)),
                                              lab(l), lab(rr))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for u in range(n):
                    if not leq(alg, qv[x][z][u], qv[jv[x][y]][z][u]):
                        return Report.failing("(25)", (lab(x), lab(y), lab(z), lab(u)),
                                              lab(qv[x][z][u]), lab(qv[jv[x][y]][z][u]),
                                              note="expected lhs <= rhs")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                t = jv[qv[x][y][z]][z]
                if not leq(alg, jv[x][z], iv[y][t]):
                    return Report.failing("(26)", (lab(x), lab(y), lab(z)),
                                          lab(jv[x][z]), lab(iv[y][t]),
                                          note="expected lhs <= rhs")
    for x in range(n):
        for y in range(n):
            if not leq(alg, x, iv[y][x]):
                return Report.failing("(27)", (lab(x), lab(y)), lab(x), lab(iv[y][x]),
                                      note="expected lhs <= rhs")
    for x in range(n):
        for y in range(n):
            if not leq(alg, qv[x][iv[x][y]][y], y):
                return Report.failing("(28)", (lab(x), lab(y)),
                                      lab(qv[x][iv[x][y]][y]), lab(y),
                                      note="expected lhs <= rhs")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if qv[x][y][z] != qv[jv[x][z]][jv[y][z]][z]:
                    return Report.failing("(29)", (lab(x), lab(y), lab(z)),
                                          lab(qv[x][y][z]),
                                          lab(qv[jv[x][z]][jv[y][z]][z]))
    for x in range(n):
        for y in range(n):
            if iv[jv[x][y]][y] != iv[x][y]:
                return Report.failing("(30)", (lab(x), lab(y)),
                                      lab(iv[jv[x][y]][y]), lab(iv[x][y]))
    if subvariety:
        for x in range(n):
            for y in range(n):
                if qv[x][iv[x][y]][y] != y:
                    return Report.failing("subvariety", (lab(x), lab(y)),
                                          lab(qv[x][iv[x][y]][y]), lab(y))
    return Report.passing("ternary-product identities (20)-(30) hold")
