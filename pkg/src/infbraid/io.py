"""JSON loaders and writers for algebras, Lie data, modules, maps and Poisson data.

Every loader raises ``InputError`` with a message naming the offending key so
the command line can report it and exit with the input-error status.
"""

import json
from fractions import Fraction

from .algebra import Cdga, GradedAlgebra, Generator
from .dgmod import DgMod, ModMap
from .geometry import PolyvectorAlgebra
from .lie import LieNSpec, build_ce, heis_spec, sl2_spec
from .parser import ParseError, format_poly, parse_poly


class InputError(ValueError):
    pass


BUILTIN_LIE = {
    "sl2": lambda: sl2_spec(False),
    "sl2_kappa": lambda: sl2_spec(True),
    "heis": lambda: heis_spec(False),
    "heis_kappa": lambda: heis_spec(True),
}


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None
    except json.JSONDecodeError as exc:
        raise InputError("%s: invalid JSON at line %d column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg)) from None


def _parse(text, alg, where):
    try:
        return parse_poly(text, alg)
    except ParseError as exc:
        raise InputError("%s: %s in %r" % (where, exc, text)) from None


def _rational(x, where):
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise InputError("%s: not a rational number: %r" % (where, x)) from None


def _require(data, key, where):
    if not isinstance(data, dict) or key not in data:
        raise InputError("%s: missing key %r" % (where, key))
    return data[key]


# -- algebras ------------------------------------------------------------------


def is_lie_data(data):
    return isinstance(data, dict) and "basis" in data and ("f" in data or "N" in data)


def algebra_from_json(data, check=False):
    """A Cdga from an algebra spec, a Lie spec or {"builtin": name}."""
    if isinstance(data, dict) and "builtin" in data:
        return build_ce(builtin_lie(data["builtin"]), check=check)
    if is_lie_data(data):
        return build_ce(lie_spec_from_json(data), check=check)
    gens = _require(data, "generators", "algebra")
    out = []
    for k, g in enumerate(gens):
        where = "generators[%d]" % k
        name = _require(g, "name", where)
        deg = _require(g, "degree", where)
        if not isinstance(name, str) or not isinstance(deg, int):
            raise InputError("%s: name must be a string and degree an integer" % where)
        out.append(Generator(name, deg))
    if len({g.name for g in out}) != len(out):
        raise InputError("generators: duplicate names")
    alg = GradedAlgebra(out, dict(data.get("aliases", {})))
    diff = {}
    for name, expr in data.get("differential", {}).items():
        if alg.aliases.get(name, name) not in alg.index:
            raise InputError("differential: unknown generator %r" % name)
        diff[name] = _parse(expr, alg, "differential[%s]" % name)
    try:
        return Cdga(alg, diff)
    except ValueError as exc:
        raise InputError("differential: %s" % exc) from None


def algebra_to_json(A):
    alg = A.alg
    return {"generators": [{"name": g.name, "degree": g.degree} for g in alg.generators],
            "differential": {alg.generators[i].name: format_poly(v)
                             for i, v in sorted(A.diff.items()) if v}}


def builtin_lie(name):
    try:
        return BUILTIN_LIE[name]()
    except KeyError:
        raise InputError("unknown built-in Lie algebra %r (known: %s)"
                         % (name, ", ".join(sorted(BUILTIN_LIE)))) from None


def _index_key(key, arity, where):
    body = key.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",")]
    if len(parts) != arity or not all(parts):
        raise InputError("%s: expected %d comma-separated labels in %r" % (where, arity, key))
    return tuple(parts)


def lie_spec_from_json(data):
    if isinstance(data, dict) and "builtin" in data:
        return builtin_lie(data["builtin"])
    basis = _require(data, "basis", "lie")
    brackets = {}
    for key, out in data.get("f", {}).items():
        ab = _index_key(key, 2, "f")
        brackets[ab] = {c: _rational(v, "f[%s]" % key) for c, v in out.items()}
    kappa = {_index_key(k, 3, "kappa"): _rational(v, "kappa[%s]" % k)
             for k, v in data.get("kappa", {}).items()}
    reps = {}
    for rname, mats in data.get("reps", {}).items():
        reps[rname] = {lab: [[_rational(x, "reps[%s]" % rname) for x in row] for row in m]
                       for lab, m in mats.items()}
    try:
        return LieNSpec(basis, brackets, kappa or None, N=data.get("N"),
                        name=data.get("name", "g"), reps=reps)
    except (KeyError, ValueError) as exc:
        raise InputError("lie: %s" % (exc.args[0] if exc.args else exc)) from None


# -- modules and maps ------------------------------------------------------------


def module_from_json(A, data, name="M"):
    basis = _require(data, "basis", "module %s" % name)
    names, degrees = [], []
    for k, b in enumerate(basis):
        where = "module %s basis[%d]" % (name, k)
        names.append(_require(b, "name", where))
        degrees.append(_require(b, "degree", where))
    pos = {n: k for k, n in enumerate(names)}
    if len(pos) != len(names):
        raise InputError("module %s: duplicate basis names" % name)
    mat = {}
    for src, row in data.get("diff", {}).items():
        for tgt, expr in row.items():
            if src not in pos or tgt not in pos:
                raise InputError("module %s: unknown basis element in diff[%s][%s]"
                                 % (name, src, tgt))
            v = _parse(expr, A.alg, "module %s diff[%s][%s]" % (name, src, tgt))
            if v and v.degree() != degrees[pos[src]] + 1 - degrees[pos[tgt]]:
                raise InputError("module %s: diff[%s][%s] has degree %d, expected %d"
                                 % (name, src, tgt, v.degree(),
                                    degrees[pos[src]] + 1 - degrees[pos[tgt]]))
            mat[(pos[src], pos[tgt])] = v
    return DgMod(A, names, degrees, mat, name=name)


def module_to_json(M):
    diff = {}
    for i, row in enumerate(M.rows):
        if row:
            diff[M.basis[i]] = {M.basis[j]: format_poly(v) for j, v in sorted(row.items())}
    return {"basis": [{"name": b, "degree": d} for b, d in zip(M.basis, M.degrees)],
            "diff": diff}


def map_from_json(source, target, data, name=None):
    where = "map %s" % (name or "")
    degree = data.get("degree", 0)
    if not isinstance(degree, int):
        raise InputError("%s: degree must be an integer" % where)
    spos = {n: k for k, n in enumerate(source.basis)}
    tpos = {n: k for k, n in enumerate(target.basis)}
    ent = {}
    for src, row in data.get("entries", {}).items():
        for tgt, expr in row.items():
            if src not in spos or tgt not in tpos:
                raise InputError("%s: unknown basis element in entries[%s][%s]" % (where, src, tgt))
            v = _parse(expr, source.alg, "%s entries[%s][%s]" % (where, src, tgt))
            i, j = spos[src], tpos[tgt]
            want = source.degrees[i] + degree - target.degrees[j]
            if v and v.degree() != want:
                raise InputError("%s: entries[%s][%s] has degree %d, expected %d"
                                 % (where, src, tgt, v.degree(), want))
            ent[(i, j)] = v
    return ModMap(source, target, degree, ent, name=name)


def map_to_json(f):
    ent = {}
    for i, row in enumerate(f.rows):
        if row:
            ent[f.source.basis[i]] = {f.target.basis[j]: format_poly(v)
                                      for j, v in sorted(row.items())}
    return {"degree": f.degree, "entries": ent}


# -- Poisson data ------------------------------------------------------------------


def poisson_from_json(A, data):
    """(PolyvectorAlgebra, {weight: component}) from a Poisson candidate spec."""
    shift = data.get("shift", 2)
    if not isinstance(shift, int) or shift < 0:
        raise InputError("poisson: shift must be a non-negative integer")
    PA = PolyvectorAlgebra(A, shift)
    comps = {}
    for w, expr in _require(data, "components", "poisson").items():
        try:
            weight = int(w)
        except ValueError:
            raise InputError("poisson: component key %r is not a weight" % w) from None
        P = _parse(expr, PA.alg, "poisson component %s" % w)
        if P and PA.weights(P) != {weight}:
            raise InputError("poisson: component %s has weights %s"
                             % (w, sorted(PA.weights(P))))
        comps[weight] = P
    return PA, comps


def poisson_to_json(PA, P):
    comps = {}
    for w in sorted(PA.weights(P)):
        comps[str(w)] = format_poly(PA.weight_part(P, w))
    return {"shift": PA.n, "components": comps}
