"""Check plans: load the referenced data, sample inputs from a seed, run checks.

A plan is a JSON object::

    {"name": "sl2",
     "algebra": {"builtin": "sl2"},            # or a Lie spec, an algebra spec, {"file": ...}
     "poisson": {"shift": 2, "components": {"2": "..."}},
     "corpus": true,                            # add the standard sample corpus
     "modules": {"V": {"rep": "fund"}, ...},
     "morphisms": {"h": {"source": "V", "target": "V", "random_closed": true}, ...},
     "hbar_order": 3,
     "checks": [{"name": "hex", "kind": "hexagons", "objects": [["V", "V", "V"]]}, ...]}

Objects and morphisms of a check are lists of module / morphism ids.  When a
check omits them they are drawn from everything loaded, using the plan seed.
"""

import os
import random

from .algebra import check_square_zero
from .braiding import (Bivector, check_gamma_equivariance, check_gamma_suite, check_hexagons,
                       check_t_closed, check_tij_calculus, first_order_hexagon,
                       phi_identities_mod_hbar3, t_double, t_double_composite, t_single,
                       t_single_composite, t_transformation, xi_transformation)
from .dgmod import check_module, compose, identity
from .geometry import mc_check
from .io import (InputError, algebra_from_json, load_json, map_from_json,
                 module_from_json, poisson_from_json)
from .lie import InvalidLieData, strict_rep_module, trivial_module
from .parser import format_poly
from .samples import (direct_sum, make_nonstrict, random_closed_map, shifted_copy,
                      standard_corpus)
from .transform import CheckResult, check_pseudonaturality

MAX_TERMS = 20

# check kind -> minimal hbar order it needs
KINDS = {
    "square_zero": 0, "modules": 0, "maurer_cartan": 0, "t_routes": 0, "t_closed": 0,
    "t_pseudonaturality": 0, "xi_pseudonaturality": 0, "hexagons": 0,
    "gamma_equivariance": 0, "tij_calculus": 0, "gamma_suite": 0,
    "first_order_hexagon": 2, "phi_identities": 3,
}

DEFAULT_CHECKS = ["square_zero", "modules", "maurer_cartan", "t_routes", "t_closed",
                  "t_pseudonaturality", "xi_pseudonaturality", "hexagons",
                  "gamma_equivariance", "tij_calculus", "gamma_suite",
                  "first_order_hexagon", "phi_identities"]


class Workspace:
    """Everything a plan refers to, loaded in plan order."""

    def __init__(self, plan, seed, base_dir="."):
        self.plan = plan
        self.seed = seed
        self.base_dir = base_dir
        self.rng = random.Random(seed)
        self.modules = {}
        self.morphisms = {}
        self._load()

    def _data(self, value, what):
        if isinstance(value, dict) and set(value) == {"file"}:
            return load_json(os.path.join(self.base_dir, value["file"]))
        if isinstance(value, str):
            return load_json(os.path.join(self.base_dir, value))
        if value is None:
            raise InputError("plan: missing %s" % what)
        return value

    def _load(self):
        plan = self.plan
        if not isinstance(plan, dict):
            raise InputError("plan: expected a JSON object")
        data = self._data(plan.get("algebra"), "algebra")
        try:
            self.A = algebra_from_json(data, check=False)
        except InvalidLieData as exc:
            raise InputError("algebra: %s" % exc) from None
        self.bv = None
        if "poisson" in plan:
            self.PA, comps = poisson_from_json(self.A, self._data(plan["poisson"], "poisson"))
            self.poisson = comps
            if comps.get(2) is not None and comps[2]:
                self.bv = Bivector(self.PA, comps[2])
        if plan.get("corpus") and getattr(self.A, "lie", None) is not None:
            C = standard_corpus(self.A, self.seed)
            for key, M in C.modules.items():
                self.modules[key] = M
            for key, h in C.morphisms.items():
                h.name = key
                self.morphisms[key] = h
        for key, spec in plan.get("modules", {}).items():
            self.modules[key] = self._module(key, spec)
        for key, spec in plan.get("morphisms", {}).items():
            h = self._morphism(key, spec)
            h.name = key
            self.morphisms[key] = h

    def module(self, key):
        try:
            return self.modules[key]
        except KeyError:
            raise InputError("unknown module id %r" % key) from None

    def morphism(self, key):
        try:
            return self.morphisms[key]
        except KeyError:
            raise InputError("unknown morphism id %r" % key) from None

    def _module(self, key, spec):
        A = self.A
        if not isinstance(spec, dict):
            raise InputError("module %s: expected an object" % key)
        try:
            if "rep" in spec:
                lie = getattr(A, "lie", None)
                if lie is None or spec["rep"] not in lie.reps:
                    raise InputError("module %s: unknown representation %r" % (key, spec["rep"]))
                return strict_rep_module(A, lie.reps[spec["rep"]], name=key)
            if "trivial" in spec:
                return trivial_module(A, spec["trivial"], spec.get("d"), name=key)
            if "sum" in spec:
                return direct_sum(A, [self.module(k) for k in spec["sum"]], key)
            if "shift" in spec:
                return shifted_copy(self.module(spec["shift"]), spec.get("by", 1), name=key)
            if "gauge" in spec:
                Mp, phi = make_nonstrict(self.module(spec["gauge"]), self.rng, key)
                phi.name = "phi_" + key
                self.morphisms[phi.name] = phi
                return Mp
            if "file" in spec:
                return module_from_json(A, self._data(spec, "module"), key)
            return module_from_json(A, spec, key)
        except InvalidLieData as exc:
            raise InputError("module %s: %s" % (key, exc)) from None

    def _morphism(self, key, spec):
        if not isinstance(spec, dict):
            raise InputError("morphism %s: expected an object" % key)
        if "identity" in spec:
            return identity(self.module(spec["identity"]))
        if "compose" in spec:
            g, h = (self.morphism(k) for k in spec["compose"])
            if h.target is not g.source:
                raise InputError("morphism %s: maps are not composable" % key)
            return compose(g, h)
        src = self.module(_need(spec, "source", key))
        tgt = self.module(_need(spec, "target", key))
        if spec.get("random_closed"):
            return random_closed_map(src, tgt, self.rng,
                                     require_nonconstant=bool(spec.get("nonconstant")))
        return map_from_json(src, tgt, spec, key)

    # -- sampling ----------------------------------------------------------------

    def objects(self, given, arity, count):
        if given is not None:
            out = []
            for c in given:
                if len(c) != arity:
                    raise InputError("expected %d-tuples of module ids, got %r" % (arity, c))
                out.append(tuple(self.module(k) for k in c))
            return out
        keys = sorted(self.modules)
        return [tuple(self.modules[self.rng.choice(keys)] for _ in range(arity))
                for _ in range(count)]

    def maps(self, given, arity, count, degree0=True):
        if given is not None:
            out = []
            for c in given:
                if len(c) != arity:
                    raise InputError("expected %d-tuples of morphism ids, got %r" % (arity, c))
                out.append(tuple(self.morphism(k) for k in c))
            return out
        keys = sorted(k for k, h in self.morphisms.items() if h.degree == 0 or not degree0)
        if not keys:
            return []
        return [tuple(self.morphisms[self.rng.choice(keys)] for _ in range(arity))
                for _ in range(count)]


def _need(spec, field, key):
    if field not in spec:
        raise InputError("morphism %s: missing %r" % (key, field))
    return spec[field]


# -- running ------------------------------------------------------------------------


def _poly_norm(p):
    return len(p.terms)


def _map_norm(f):
    return sum(len(v.terms) for v in f.entries().values())


def _map_text(f):
    parts, used = [], 0
    ents = sorted(f.entries().items())
    for (i, j), v in ents:
        room = MAX_TERMS - used
        if room <= 0:
            parts.append("...")
            break
        parts.append("[%s->%s] %s" % (f.source.basis[i], f.target.basis[j],
                                      format_poly(v, room)))
        used += len(v.terms)
    return "; ".join(parts) or "0"


def _residue_entry(label, r):
    if hasattr(r, "entries"):
        return {"at": _label_text(label), "norm": _map_norm(r), "residue": _map_text(r)}
    return {"at": _label_text(label), "norm": _poly_norm(r),
            "residue": format_poly(r, MAX_TERMS)}


def _label_text(label):
    if isinstance(label, tuple):
        return " ".join(_label_text(x) for x in label)
    return str(label)


def _poly_check(name, residues):
    res = CheckResult(name)
    for key, r in residues:
        res.record_strict(key, r)
    return res


def _need_bv(ws, kind):
    if ws.bv is None:
        raise InputError("check %s needs a Poisson bivector (weight-2 component)" % kind)
    return ws.bv


def run_check(ws, entry):
    kind = entry.get("kind")
    if kind not in KINDS:
        raise InputError("unknown check kind %r" % kind)
    n = entry.get("samples", 4)
    objs = entry.get("objects")
    mors = entry.get("morphisms")
    A = ws.A
    if kind == "square_zero":
        bad = check_square_zero(A)
        return [_poly_check("square_zero", [((g.name,), bad.get(g.name, A.alg.zero()))
                                            for g in A.alg.generators])]
    if kind == "modules":
        res = CheckResult("modules")
        keys = [k for c in objs for k in c] if objs else sorted(ws.modules)
        for k in keys:
            bad = check_module(ws.module(k))
            if not bad:
                res.strict_passes += 1
            for (a, b), v in sorted(bad.items()):
                res.record_strict((k, a, b), v)
        return [res]
    if kind == "maurer_cartan":
        if not hasattr(ws, "poisson"):
            raise InputError("check maurer_cartan needs a Poisson structure")
        res = mc_check(ws.PA, ws.poisson)
        return [_poly_check("maurer_cartan", [(("weight", w), r) for w, r in sorted(res.items())])]
    bv = _need_bv(ws, kind)
    t = t_transformation(bv)
    if kind == "t_routes":
        res = CheckResult("t basis formula = composite")
        for M, N in ws.objects(objs, 2, n):
            res.record_strict(("single", M.name, N.name),
                              t_single(bv, M, N) - t_single_composite(bv, M, N))
        for h, k in ws.maps(mors, 2, n):
            res.record_strict(("double", h.name, k.name),
                              t_double(bv, h, k) - t_double_composite(bv, h, k))
        return [res]
    if kind == "t_closed":
        return [check_t_closed(t, ws.objects(objs, 2, n))]
    if kind == "t_pseudonaturality":
        return [check_pseudonaturality(t, ws.maps(mors, 2, n), name="t pseudo-naturality")]
    if kind == "xi_pseudonaturality":
        single = ws.maps(mors, 1, n)
        composable = [((a,), (b,)) for (a,) in single for (b,) in single
                      if b.target is a.source]
        minus = [(k,) for k in ws.morphisms.values() if k.degree == -1]
        return [check_pseudonaturality(xi_transformation(), single, composable, minus,
                                       ws.objects(objs, 1, n), name="xi pseudo-naturality")]
    if kind == "hexagons":
        return list(check_hexagons(t, ws.objects(objs, 3, n), ws.maps(mors, 3, n)))
    if kind == "gamma_equivariance":
        return [check_gamma_equivariance(t, ws.objects(objs, 2, n), ws.maps(mors, 2, n))]
    if kind == "tij_calculus":
        o4 = ws.objects(entry.get("objects4"), 4, entry.get("samples4", 1))
        m4 = ws.maps(entry.get("morphisms4"), 4, entry.get("samples4", 1))
        return check_tij_calculus(t, ws.objects(objs, 3, n), ws.maps(mors, 3, n), o4, m4)
    if kind == "gamma_suite":
        o3 = ws.objects(objs, 3, n)
        strict = [c for c in o3 if all(M.is_strict() for M in c)]
        return check_gamma_suite(t, o3, ws.maps(mors, 3, n), strict)
    if kind == "first_order_hexagon":
        return first_order_hexagon(t, ws.objects(objs, 3, n), ws.maps(mors, 3, n),
                                   ws.objects(entry.get("objects2"), 2, n),
                                   ws.maps(entry.get("morphisms2"), 2, n))
    if kind == "phi_identities":
        o4 = ws.objects(entry.get("objects4"), 4, entry.get("samples4", 1))
        m4 = ws.maps(entry.get("morphisms4"), 4, entry.get("samples4", 1))
        return phi_identities_mod_hbar3(t, ws.objects(objs, 3, n), ws.maps(mors, 3, n),
                                        o4, m4, expect_strict=bool(entry.get("expect_strict")))
    raise InputError("unhandled check kind %r" % kind)


def _result_json(r):
    fails = [_residue_entry(lab, res) for lab, res in r.residues]
    return {"name": r.name, "passed": r.passed, "strict_passes": r.strict_passes,
            "mod_exact_passes": r.mod_exact_passes, "failures": fails}


def run_plan(plan, seed=None, hbar=None, base_dir="."):
    """Run a plan and return the JSON-ready report."""
    if seed is None:
        seed = plan.get("seed", 0) if isinstance(plan, dict) else 0
    ws = Workspace(plan, seed, base_dir)
    order = hbar if hbar is not None else plan.get("hbar_order", 0)
    if order not in (0, 2, 3):
        raise InputError("hbar order must be 0, 2 or 3")
    entries = plan.get("checks")
    if entries is None:
        entries = [{"kind": k} for k in DEFAULT_CHECKS]
    report = []
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise InputError("checks[%d]: expected an object" % k)
        name = entry.get("name") or entry.get("kind") or "check %d" % k
        must = entry.get("must_pass", True)
        need = KINDS.get(entry.get("kind"), 0)
        if need > order:
            report.append({"name": name, "kind": entry.get("kind"), "status": "skipped",
                           "reason": "needs hbar order %d" % need, "must_pass": must})
            continue
        parts = run_check(ws, entry)
        passed = all(p.passed for p in parts)
        report.append({"name": name, "kind": entry["kind"],
                       "status": "pass" if passed else "fail", "must_pass": must,
                       "parts": [_result_json(p) for p in parts]})
    failed = [r["name"] for r in report if r["status"] == "fail" and r["must_pass"]]
    return {"plan": plan.get("name", "plan"), "seed": seed, "hbar_order": order,
            "modules": sorted(ws.modules), "morphisms": sorted(ws.morphisms),
            "checks": report,
            "summary": {"checks": len(report),
                        "passed": sum(r["status"] == "pass" for r in report),
                        "failed": len([r for r in report if r["status"] == "fail"]),
                        "skipped": sum(r["status"] == "skipped" for r in report),
                        "ok": not failed}}


def load_plan(path):
    plan = load_json(path)
    if not isinstance(plan, dict):
        raise InputError("%s: a plan must be a JSON object" % path)
    return plan
