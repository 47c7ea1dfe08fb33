"""Exact sparse Gaussian elimination over Q.

Rows are dicts ``column -> Fraction``.  Column keys can be any hashable,
orderable values; pivots are chosen in sorted column order so results are
deterministic.
"""

from fractions import Fraction


def _reduce(row, pivots):
    """Reduce a row against a fully reduced echelon basis."""
    row = dict(row)
    for col in [c for c in row if c in pivots]:
        f = row.get(col)
        if not f:
            continue
        for c, v in pivots[col].items():
            nv = row.get(c, 0) - f * v
            if nv:
                row[c] = nv
            else:
                row.pop(c, None)
    return row


def echelon(rows):
    """Fully reduced row echelon form as {pivot column: row}."""
    pivots = {}
    for row in rows:
        r = _reduce({k: Fraction(v) for k, v in row.items() if v}, pivots)
        if not r:
            continue
        col = min(r)
        inv = 1 / r[col]
        r = {c: v * inv for c, v in r.items()}
        # keep the basis fully reduced
        for pc, prow in pivots.items():
            f = prow.get(col)
            if f:
                for c, v in r.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[col] = r
    return pivots


def rank(rows):
    return len(echelon(rows))


def nullspace(rows, columns):
    """Basis of {x : row . x = 0 for all rows}, as dicts over ``columns``."""
    piv = echelon(rows)
    free = [c for c in columns if c not in piv]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for pc, prow in piv.items():
            a = prow.get(f)
            if a:
                v[pc] = -a
        basis.append(v)
    return basis


def solve(columns_data, target):
    """Find x with sum_k x_k * columns_data[k] == target, or None.

    ``columns_data`` maps unknown -> vector (dict); ``target`` is a vector.
    Solved by eliminating on the transposed augmented system.
    """
    # rows indexed by coordinates; unknowns are columns; RHS in column None-like key
    rhs_key = ("__rhs__",)
    rows = {}
    for k, vec in columns_data.items():
        for coord, v in vec.items():
            if v:
                rows.setdefault(coord, {})[(0, k)] = Fraction(v)
    for coord, v in target.items():
        if v:
            rows.setdefault(coord, {})[(1, rhs_key)] = Fraction(v)
    ordered = [rows[c] for c in sorted(rows, key=repr)]
    piv = echelon(ordered)
    if (1, rhs_key) in piv:
        return None
    x = {}
    for (tag, k), prow in piv.items():
        x[k] = prow.get((1, rhs_key), Fraction(0))
    return x


def in_span(vectors, target):
    return solve(dict(enumerate(vectors)), target) is not None


def span_equal(vs, ws):
    """Whether two finite lists of sparse vectors span the same subspace."""
    r = rank(vs)
    return r == rank(ws) and r == rank(list(vs) + list(ws))
