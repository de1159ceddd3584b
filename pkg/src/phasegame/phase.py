"""Phase structures: a commutative multiplication on a lattice plus duality.

A phase structure carries a complete distributive lattice, a commutative
monoid-like product on it, a falsum element used to define duals, and the
derived apparatus of linear-logic connectives (tensor, par, implication,
additives) together with the fact/open/closed classification.

Duals come either from explicit overrides in the source document or from the
residuation dual(X) = lin_implies(X, falsum) when that join is closed.
"""

import json
import os
import warnings

from .data import resolve_path
from .errors import (
    DualLawViolation,
    ForeignElement,
    NotAssociative,
    NotClosed,
    NotClosedClass,
    NotCommutative,
    OverrideInconsistent,
    UnitNotNeutral,
)
from .lattice import Lattice, lattice_from_doc, load_lattice


class NonFactWarning(UserWarning):
    """Additive connective applied to an element outside the fact set."""


class PhaseStructure:
    """Immutable bundle of lattice, product, unit, falsum and dual table."""

    def __init__(self, lattice, mult, unit, falsum, dual_table,
                 unit_mode="weak", checks="full",
                 op_class=None, cl_class=None):
        self.lattice = lattice
        self._mult = dict(mult)
        self.unit = unit
        self.falsum = falsum
        self._dual = dict(dual_table)
        self.unit_mode = unit_mode
        self.checks = checks
        self.op_class = list(op_class) if op_class is not None else None
        self.cl_class = list(cl_class) if cl_class is not None else None

    def mult(self, x, y):
        try:
            return self._mult[(x, y)]
        except KeyError:
            if x not in self.lattice or y not in self.lattice:
                raise ForeignElement("%r, %r" % (x, y))
            raise

    def dual(self, x):
        return self._dual[x]

    def is_fact(self, x):
        return self._dual[self._dual[x]] == x

    def facts(self):
        return [x for x in self.lattice.elements if self.is_fact(x)]

    # connectives -----------------------------------------------------

    def tensor(self, x, y, mode="raw"):
        """Product of x and y; mode 'fact_closed' applies double dual."""
        v = self.mult(x, y)
        if mode == "fact_closed":
            return self._dual[self._dual[v]]
        if mode != "raw":
            raise ValueError("mode must be 'raw' or 'fact_closed'")
        return v

    def par(self, x, y):
        return self._dual[self.mult(self._dual[x], self._dual[y])]

    def impl(self, x, y):
        """Implication as the dual of x times dual y."""
        return self._dual[self.mult(x, self._dual[y])]

    def additive_conj(self, x, y):
        self._warn_non_fact("additive_conj", x, y)
        return self.lattice.meet2(x, y)

    def additive_disj(self, x, y):
        self._warn_non_fact("additive_disj", x, y)
        j = self.lattice.join2(x, y)
        return self._dual[self._dual[j]]

    def _warn_non_fact(self, op, *xs):
        for x in xs:
            if not self.is_fact(x):
                warnings.warn("%s: %r is not a fact" % (op, x),
                              NonFactWarning, stacklevel=3)

    def lin_implies(self, x, y):
        """Largest z with mult(x, z) <= y, if that join is itself a witness.

        Raises NotClosed when the join of all witnesses fails the bound, in
        which case the residual does not exist in this structure.
        """
        star, closed = self._residual(x, y)
        if not closed:
            raise NotClosed(
                "lin_implies(%r, %r): join %r of witnesses is not a witness"
                % (x, y, star))
        return star

    def _residual(self, x, y):
        lat = self.lattice
        cands = [z for z in lat.elements if lat.leq(self._mult[(x, z)], y)]
        star = lat.join(cands)
        return star, lat.leq(self._mult[(x, star)], y)


def _check_totality(lattice, mult):
    for x in lattice.elements:
        for y in lattice.elements:
            if (x, y) not in mult:
                raise NotCommutative("product undefined at (%r, %r)" % (x, y))


def _check_associative(lattice, mult):
    els = lattice.elements
    for x in els:
        for y in els:
            xy = mult[(x, y)]
            for z in els:
                if mult[(xy, z)] != mult[(x, mult[(y, z)])]:
                    raise NotAssociative(
                        "(%r*%r)*%r = %r but %r*(%r*%r) = %r"
                        % (x, y, z, mult[(xy, z)],
                           x, y, z, mult[(x, mult[(y, z)])]))


def _symmetrize(lattice, triples):
    mult = {}
    for x, y, v in triples:
        for el in (x, y, v):
            if el not in lattice:
                raise ForeignElement(repr(el))
        for key in ((x, y), (y, x)):
            if key in mult and mult[key] != v:
                raise NotCommutative(
                    "conflicting entries at %r: %r vs %r"
                    % (key, mult[key], v))
            mult[key] = v
    return mult


def _derive_duals(ps_like, lattice, mult, falsum, overrides):
    dual = {}
    for x in lattice.elements:
        if x in overrides:
            if overrides[x] not in lattice:
                raise ForeignElement(repr(overrides[x]))
            dual[x] = overrides[x]
            continue
        cands = [z for z in lattice.elements if lattice.leq(mult[(x, z)], falsum)]
        star = lattice.join(cands)
        if not lattice.leq(mult[(x, star)], falsum):
            raise NotClosed(
                "dual of %r is not expressible: join %r of witnesses fails "
                "mult(%r, %r) <= %r; add a dual override" % (x, star, x, star, falsum))
        dual[x] = star
    return dual


def _check_dual_laws(lattice, mult, falsum, dual, had_overrides):
    err = OverrideInconsistent if had_overrides else DualLawViolation
    for x in lattice.elements:
        if dual[dual[dual[x]]] != dual[x]:
            raise err("triple dual broken at %r" % (x,))
        if not lattice.leq(x, dual[dual[x]]):
            raise err("%r is not below its double dual %r" % (x, dual[dual[x]]))
        if not lattice.leq(mult[(x, dual[x])], falsum):
            raise err("mult(%r, dual) = %r exceeds falsum"
                      % (x, mult[(x, dual[x])]))
    for x in lattice.elements:
        for y in lattice.elements:
            lhs = dual[lattice.join2(x, y)]
            rhs = lattice.meet2(dual[x], dual[y])
            if lhs != rhs:
                raise err("dual of join broken at (%r, %r): %r vs %r"
                          % (x, y, lhs, rhs))


def phase_from_doc(doc, lattice=None, base_dir=None, validate=True):
    """Build a PhaseStructure from a parsed JSON document.

    validate=False skips the associativity, strict-unit and dual-law gates
    so a broken table can still be loaded and audited with verify_laws.
    """
    if lattice is None:
        lat_field = doc["lattice"]
        if isinstance(lat_field, str):
            lattice = load_lattice(resolve_path(lat_field, base_dir))
        else:
            lattice = lattice_from_doc(lat_field)
    for entry in doc["mult"]:
        if isinstance(entry[2], list):
            raise ValueError(
                "entry %r lists candidates; resolve it with the solver first"
                % (entry,))
    mult = _symmetrize(lattice, doc["mult"])
    _check_totality(lattice, mult)

    unit = doc["unit"]
    falsum = doc["falsum"]
    for el in (unit, falsum):
        if el not in lattice:
            raise ForeignElement(repr(el))
    unit_mode = doc.get("unit_mode", "weak")
    checks = doc.get("checks", "full")
    if unit_mode not in ("weak", "strict"):
        raise ValueError("unit_mode must be 'weak' or 'strict'")
    if checks not in ("full", "relaxed"):
        raise ValueError("checks must be 'full' or 'relaxed'")

    if validate:
        if checks == "full":
            _check_associative(lattice, mult)
        if unit_mode == "strict":
            for x in lattice.elements:
                if mult[(unit, x)] != x:
                    raise UnitNotNeutral(
                        "mult(%r, %r) = %r" % (unit, x, mult[(unit, x)]))

    overrides = {x: d for x, d in doc.get("dual_overrides", [])}
    dual = _derive_duals(None, lattice, mult, falsum, overrides)
    if validate and checks == "full":
        _check_dual_laws(lattice, mult, falsum, dual, bool(overrides))

    return PhaseStructure(
        lattice, mult, unit, falsum, dual,
        unit_mode=unit_mode, checks=checks,
        op_class=doc.get("op_class"), cl_class=doc.get("cl_class"))


def load_phase(path, lattice=None, validate=True):
    path = resolve_path(path)
    with open(path) as fh:
        doc = json.load(fh)
    return phase_from_doc(doc, lattice=lattice,
                          base_dir=os.path.dirname(path), validate=validate)


# law audit ------------------------------------------------------------

_MAX_WITNESSES = 5


def _law(name, witnesses, checked, skipped=0):
    return {
        "law": name,
        "status": "fail" if witnesses else "pass",
        "checked": checked,
        "skipped": skipped,
        "witnesses": witnesses[:_MAX_WITNESSES],
    }


def verify_laws(ps):
    """Audit every law on a structure, returning a report dictionary.

    Unlike load-time validation this never raises: hand-built or corrupted
    structures produce a report with failing entries and witnesses instead.
    """
    lat = ps.lattice
    els = lat.elements
    laws = []

    w = []
    for x in els:
        for y in els:
            if ps._mult.get((x, y)) != ps._mult.get((y, x)):
                w.append((x, y))
    laws.append(_law("commutative", w, len(els) ** 2))

    w = []
    for x in els:
        for y in els:
            xy = ps._mult[(x, y)]
            for z in els:
                if ps._mult[(xy, z)] != ps._mult[(x, ps._mult[(y, z)])]:
                    w.append((x, y, z))
    laws.append(_law("associative", w, len(els) ** 3))

    if ps.unit_mode == "strict":
        w = [x for x in els if ps._mult[(ps.unit, x)] != x]
        laws.append(_law("unit_identity", w, len(els)))
    else:
        laws.append({"law": "unit_identity", "status": "skipped",
                     "checked": 0, "skipped": len(els), "witnesses": []})

    w = [x for x in els if ps._dual[ps._dual[ps._dual[x]]] != ps._dual[x]]
    laws.append(_law("triple_dual", w, len(els)))

    w = [x for x in els if not lat.leq(x, ps._dual[ps._dual[x]])]
    laws.append(_law("double_dual_extensive", w, len(els)))

    w = [x for x in els if not lat.leq(ps._mult[(x, ps._dual[x])], ps.falsum)]
    laws.append(_law("contradiction_below_falsum", w, len(els)))

    w = []
    for x in els:
        for y in els:
            if ps._dual[lat.join2(x, y)] != lat.meet2(ps._dual[x], ps._dual[y]):
                w.append((x, y))
    laws.append(_law("dual_of_join_is_meet_of_duals", w, len(els) ** 2))

    # implication law: where the residual towards dual(y) exists, it must
    # coincide with the dual of the product.  Pairs with no residual are
    # reported as skipped, not failed.
    w = []
    skipped = 0
    checked = 0
    for x in els:
        for y in els:
            star, closed = ps._residual(x, ps._dual[y])
            if not closed:
                skipped += 1
                continue
            checked += 1
            if star != ps._dual[ps._mult[(x, y)]]:
                w.append((x, y, star, ps._dual[ps._mult[(x, y)]]))
    laws.append(_law("residual_matches_dual_product", w, checked, skipped))

    return {"ok": all(e["status"] != "fail" for e in laws), "laws": laws}


class FactClassification:
    def __init__(self, facts, open_class, closed_class, neutral, top_fact):
        self.facts = facts
        self.open_class = open_class
        self.closed_class = closed_class
        self.neutral = neutral
        self.top_fact = top_fact

    def to_doc(self):
        return {
            "facts": self.facts,
            "open_class": self.open_class,
            "closed_class": self.closed_class,
            "neutral": self.neutral,
            "top_fact": self.top_fact,
        }


def classify(ps):
    """Split the facts into the open and closed classes and sanity-check them.

    Open facts sit below the neutral element dual(falsum); closed facts sit
    above falsum.  The two classes must be swapped by duality, the open class
    must be closed under join and fact-closed tensor, and the closed class
    under meet and par.  Declared classes on the structure, when present,
    must agree with the derived ones.
    """
    lat = ps.lattice
    facts = ps.facts()
    neutral = ps.dual(ps.falsum)
    op = [x for x in facts if lat.leq(x, neutral)]
    cl = [x for x in facts if lat.leq(ps.falsum, x)]

    if ps.op_class is not None and sorted(ps.op_class) != sorted(op):
        raise NotClosedClass("declared open class %r differs from derived %r"
                             % (ps.op_class, op))
    if ps.cl_class is not None and sorted(ps.cl_class) != sorted(cl):
        raise NotClosedClass("declared closed class %r differs from derived %r"
                             % (ps.cl_class, cl))

    if sorted(ps.dual(x) for x in op) != sorted(cl):
        raise NotClosedClass("duality does not swap the open and closed classes")
    for x in op:
        for y in op:
            j = lat.join2(x, y)
            if j not in op:
                raise NotClosedClass("open class not join-closed at (%r, %r)" % (x, y))
            t = ps.tensor(x, y, mode="fact_closed")
            if t not in op:
                raise NotClosedClass("open class not tensor-closed at (%r, %r)" % (x, y))
    for x in cl:
        for y in cl:
            m = lat.meet2(x, y)
            if m not in cl:
                raise NotClosedClass("closed class not meet-closed at (%r, %r)" % (x, y))
            p = ps.par(x, y)
            if p not in cl:
                raise NotClosedClass("closed class not par-closed at (%r, %r)" % (x, y))

    if lat.join(op) != neutral:
        raise NotClosedClass("largest open fact is not the neutral element")
    if lat.meet(cl) != ps.falsum:
        raise NotClosedClass("least closed fact is not falsum")

    return FactClassification(facts, op, cl, neutral, ps.dual(lat.bottom))
