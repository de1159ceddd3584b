"""Completion solver for partially specified multiplication tables.

A candidates document looks like a phase document except that some mult
entries carry a list of candidate values instead of a single value, and it
may state linked constraints of the form "the join of these products equals
v".  The solver enumerates completions by backtracking, pruning with the
associativity instances that become decidable after each assignment, and
keeps only completions whose finished table passes the full law audit.
"""

import json
import os

from .data import resolve_path
from .errors import (
    CapExceeded,
    ForeignElement,
    NoSolution,
    NotCommutative,
    PhasegameError,
)
from .lattice import lattice_from_doc, load_lattice
from .phase import phase_from_doc, verify_laws


def _canon(lattice, x, y):
    return (x, y) if lattice.idx(x) <= lattice.idx(y) else (y, x)


def _load_doc(doc_or_path):
    if isinstance(doc_or_path, str):
        path = resolve_path(doc_or_path)
        with open(path) as fh:
            return json.load(fh), os.path.dirname(path)
    return doc_or_path, None


def solve_table(doc_or_path, lattice=None, max_solutions=None):
    """Enumerate law-abiding completions of a candidates document.

    Returns a list of fully resolved phase documents, in the deterministic
    order induced by entry names and listed candidate order.  Raises
    NoSolution when nothing survives and CapExceeded (carrying the documents
    found so far) when more than max_solutions survive.
    """
    doc, base_dir = _load_doc(doc_or_path)
    if lattice is None:
        lat_field = doc["lattice"]
        if isinstance(lat_field, str):
            lattice = load_lattice(resolve_path(lat_field, base_dir))
        else:
            lattice = lattice_from_doc(lat_field)

    fixed = {}
    open_slots = {}
    for entry in doc["mult"]:
        x, y, v = entry
        if x not in lattice or y not in lattice:
            raise ForeignElement("%r, %r" % (x, y))
        key = _canon(lattice, x, y)
        if isinstance(v, list):
            cands = list(dict.fromkeys(v))
            for c in cands:
                if c not in lattice:
                    raise ForeignElement(repr(c))
            if key in open_slots and open_slots[key] != cands:
                raise NotCommutative("conflicting candidate lists at %r" % (key,))
            open_slots[key] = cands
        else:
            if v not in lattice:
                raise ForeignElement(repr(v))
            if fixed.get(key, v) != v:
                raise NotCommutative("conflicting entries at %r" % (key,))
            fixed[key] = v
    for key in fixed:
        open_slots.pop(key, None)

    constraints = []
    for c in doc.get("linked_constraints", []):
        pairs = [_canon(lattice, x, y) for x, y in c["sum"]]
        constraints.append((pairs, c["equals"]))

    slots = sorted(open_slots)
    cand_lists = [open_slots[k] for k in slots]
    prune = doc.get("checks", "full") == "full"

    table = {}
    for (x, y), v in fixed.items():
        table[(x, y)] = v
        table[(y, x)] = v

    els = lattice.elements
    solutions = []

    def assoc_ok_after(x, y):
        # only triples whose inner product is the fresh pair can newly fail
        for z in els:
            xy = table[(x, y)]
            yz = table.get((y, z))
            if yz is not None:
                lhs = table.get((xy, z))
                rhs = table.get((x, yz))
                if lhs is not None and rhs is not None and lhs != rhs:
                    return False
            zx = table.get((z, x))
            if zx is not None:
                lhs = table.get((zx, y))
                rhs = table.get((z, xy))
                if lhs is not None and rhs is not None and lhs != rhs:
                    return False
        return True

    def constraints_ok():
        for pairs, want in constraints:
            vals = [table.get(p) for p in pairs]
            if any(v is None for v in vals):
                continue
            if lattice.join(vals) != want:
                return False
        return True

    def resolved_doc():
        keys = sorted({_canon(lattice, x, y) for (x, y) in table},
                      key=lambda k: (lattice.idx(k[0]), lattice.idx(k[1])))
        out = dict(doc)
        out["mult"] = [[x, y, table[(x, y)]] for x, y in keys]
        if base_dir is not None and isinstance(out.get("lattice"), str):
            out["lattice"] = resolve_path(out["lattice"], base_dir)
        return out

    def accept():
        cand = resolved_doc()
        try:
            ps = phase_from_doc(cand, lattice=lattice)
        except PhasegameError:
            return None
        if ps.checks == "full" and not verify_laws(ps)["ok"]:
            return None
        return cand

    def walk(i):
        if i == len(slots):
            if not constraints_ok():
                return
            cand = accept()
            if cand is not None:
                solutions.append(cand)
                if max_solutions is not None and len(solutions) > max_solutions:
                    raise CapExceeded(
                        "more than %d completions" % max_solutions,
                        solutions=solutions[:max_solutions])
            return
        x, y = slots[i]
        for v in cand_lists[i]:
            table[(x, y)] = v
            table[(y, x)] = v
            if (not prune or assoc_ok_after(x, y)) and constraints_ok():
                walk(i + 1)
            del table[(x, y)]
            if x != y:
                del table[(y, x)]

    walk(0)
    if not solutions:
        raise NoSolution("no completion satisfies the declared laws")
    return solutions
