"""Finite bounded lattices described by their Hasse (cover) relation.

Order is the reflexive-transitive closure of the covers, computed once at
construction and cached as bitmasks.  All operations are pure; a Lattice is
immutable after __init__.
"""
import json

from .errors import (
    ForeignElement,
    NotALattice,
    NotAPartialOrder,
    NotHeyting,
    SizeExceeded,
    UnboundedLattice,
)


class Lattice:
    def __init__(self, elements, covers, bottom, top, generators=None):
        self.elements = list(dict.fromkeys(elements))
        self.covers = [(lo, hi) for lo, hi in covers]
        self.bottom = bottom
        self.top = top
        self.generators = list(generators) if generators else []
        self._index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        if bottom not in self._index or top not in self._index:
            raise ForeignElement("bottom/top must be declared elements")
        for g in self.generators:
            if g not in self._index:
                raise ForeignElement("generator %r not an element" % (g,))

        # upward closure per element as a bitmask: bit j set iff e_i <= e_j
        up = [1 << i for i in range(n)]
        succ = [[] for _ in range(n)]
        for lo, hi in self.covers:
            if lo not in self._index or hi not in self._index:
                raise ForeignElement("cover (%r, %r) uses unknown element" % (lo, hi))
            succ[self._index[lo]].append(self._index[hi])
        # transitive closure, reverse topological-ish fixpoint
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                for j in succ[i]:
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        self._up = up

        for i in range(n):
            for j in range(n):
                if i != j and (up[i] >> j) & 1 and (up[j] >> i) & 1:
                    raise NotAPartialOrder(
                        "cycle through %r and %r" % (self.elements[i], self.elements[j]))

        bot, topi = self._index[bottom], self._index[top]
        full = (1 << n) - 1
        if up[bot] != full:
            raise UnboundedLattice("declared bottom %r is not below every element" % (bottom,))
        if any(not (up[i] >> topi) & 1 for i in range(n)):
            raise UnboundedLattice("declared top %r is not above every element" % (top,))

        # join/meet tables; uniqueness of lub/glb is the lattice test
        self._join = [[0] * n for _ in range(n)]
        self._meet = [[0] * n for _ in range(n)]
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if (up[j] >> i) & 1:
                    down[i] |= 1 << j
        self._down = down
        for i in range(n):
            for j in range(i, n):
                ub = up[i] & up[j]
                # least element of ub: the k in ub whose up-set contains all of ub
                lub = [k for k in range(n) if (ub >> k) & 1 and (ub & ~up[k]) == 0]
                lb = down[i] & down[j]
                glb = [k for k in range(n) if (lb >> k) & 1 and (lb & ~down[k]) == 0]
                if len(lub) != 1:
                    raise NotALattice("no unique join for %r, %r"
                                      % (self.elements[i], self.elements[j]))
                if len(glb) != 1:
                    raise NotALattice("no unique meet for %r, %r"
                                      % (self.elements[i], self.elements[j]))
                self._join[i][j] = self._join[j][i] = lub[0]
                self._meet[i][j] = self._meet[j][i] = glb[0]
        self._distributive = None

    def idx(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise ForeignElement("%r is not an element of this lattice" % (x,))

    def leq(self, x, y):
        return (self._up[self.idx(x)] >> self.idx(y)) & 1 == 1

    def join(self, xs):
        it = iter(xs)
        try:
            acc = self.idx(next(it))
        except StopIteration:
            raise ValueError("join of empty set")
        for x in it:
            acc = self._join[acc][self.idx(x)]
        return self.elements[acc]

    def meet(self, xs):
        it = iter(xs)
        try:
            acc = self.idx(next(it))
        except StopIteration:
            raise ValueError("meet of empty set")
        for x in it:
            acc = self._meet[acc][self.idx(x)]
        return self.elements[acc]

    def join2(self, x, y):
        return self.elements[self._join[self.idx(x)][self.idx(y)]]

    def meet2(self, x, y):
        return self.elements[self._meet[self.idx(x)][self.idx(y)]]

    def is_distributive(self):
        if self._distributive is None:
            n = len(self.elements)
            self._distributive = True
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        if self._meet[i][self._join[j][k]] != \
                                self._join[self._meet[i][j]][self._meet[i][k]]:
                            self._distributive = False
                            break
                    if not self._distributive:
                        break
                if not self._distributive:
                    break
        return self._distributive

    def heyting_implies(self, a, b):
        """Relative pseudo-complement: join of all c with a /\\ c <= b."""
        if not self.is_distributive():
            raise NotHeyting("lattice is not distributive")
        ia, ib = self.idx(a), self.idx(b)
        cand = [k for k in range(len(self.elements))
                if (self._up[self._meet[ia][k]] >> ib) & 1]
        acc = cand[0]
        for k in cand[1:]:
            acc = self._join[acc][k]
        # residuation check: the join must itself be a candidate
        if not (self._up[self._meet[ia][acc]] >> ib) & 1:
            raise NotHeyting("residuation fails at (%r, %r)" % (a, b))
        return self.elements[acc]

    def heyting_neg(self, a):
        return self.heyting_implies(a, self.bottom)

    def atoms(self):
        """Elements covering bottom."""
        bot = self.idx(self.bottom)
        out = []
        for i, e in enumerate(self.elements):
            if i == bot:
                continue
            if (self._up[bot] >> i) & 1:
                strictly_between = any(
                    j not in (bot, i) and (self._up[bot] >> j) & 1 and (self._up[j] >> i) & 1
                    for j in range(len(self.elements)))
                if not strictly_between:
                    out.append(e)
        return out

    def rank(self, x):
        """Number of elements at or below x (used for deterministic tie-breaks)."""
        return bin(self._down[self.idx(x)]).count("1")

    def atom_rank(self, x):
        """Number of atoms at or below x."""
        return sum(1 for a in self.atoms() if self.leq(a, x))

    def __contains__(self, x):
        return x in self._index

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "Lattice(%d elements, bottom=%r, top=%r)" % (
            len(self.elements), self.bottom, self.top)


def lattice_from_doc(doc):
    for key in ("elements", "covers", "bottom", "top"):
        if key not in doc:
            raise NotALattice("lattice document missing %r" % (key,))
    return Lattice(doc["elements"], [tuple(c) for c in doc["covers"]],
                   doc["bottom"], doc["top"], doc.get("generators"))


def load_lattice(path):
    from .data import resolve_path
    with open(resolve_path(path)) as f:
        doc = json.load(f)
    return lattice_from_doc(doc)


def chain(n, names=None):
    """Chain lattice 0 < 1 < ... < n-1."""
    if names is None:
        names = [str(i) for i in range(n)]
    covers = [(names[i], names[i + 1]) for i in range(n - 1)]
    return Lattice(names, covers, names[0], names[-1])


class PowersetLattice:
    """Boolean lattice of all subsets of a universe, backed by set algebra.

    Shares the Lattice interface but skips the quadratic table construction,
    so it stays fast for the feature universes the planner builds.  Elements
    are named by comma-joined sorted members ('' for the empty set).
    """

    def __init__(self, universe):
        self.base = sorted(universe)
        if len(self.base) > 20:
            raise SizeExceeded("universe of %d members" % len(self.base))
        if len(set(self.base)) != len(self.base):
            raise ValueError("duplicate universe members")
        for u in self.base:
            if "," in u:
                raise ValueError("universe members must not contain commas")
        self.bottom = ""
        self.top = ",".join(self.base)
        self.generators = list(self.base)
        subsets = [[]]
        for u in self.base:
            subsets += [s + [u] for s in subsets]
        self.elements = [",".join(s) for s in
                         sorted(subsets, key=lambda s: (len(s), s))]
        self._members = set(self.base)
        self._parsed = {}

    def _set(self, x):
        s = self._parsed.get(x)
        if s is not None:
            return s
        parts = [p for p in x.split(",") if p]
        s = frozenset(parts)
        if len(s) != len(parts) or not s <= self._members:
            raise ForeignElement(repr(x))
        self._parsed[x] = s
        return s

    def _name(self, s):
        return ",".join(sorted(s))

    def leq(self, x, y):
        return self._set(x) <= self._set(y)

    def join2(self, x, y):
        return self._name(self._set(x) | self._set(y))

    def meet2(self, x, y):
        return self._name(self._set(x) & self._set(y))

    def join(self, xs):
        out = frozenset()
        for x in xs:
            out = out | self._set(x)
        return self._name(out)

    def meet(self, xs):
        out = frozenset(self.base)
        for x in xs:
            out = out & self._set(x)
        return self._name(out)

    def heyting_implies(self, x, y):
        return self._name((frozenset(self.base) - self._set(x)) | self._set(y))

    def heyting_neg(self, x):
        return self._name(frozenset(self.base) - self._set(x))

    def is_distributive(self):
        return True

    def atoms(self):
        return list(self.base)

    def rank(self, x):
        return 1 << len(self._set(x))

    def atom_rank(self, x):
        return len(self._set(x))

    def __contains__(self, x):
        try:
            self._set(x)
            return True
        except ForeignElement:
            return False

    def __len__(self):
        return 1 << len(self.base)

    def __repr__(self):
        return "PowersetLattice(%d members)" % len(self.base)


def powerset_lattice(universe):
    """Boolean lattice of all subsets of `universe`; table-backed when small
    enough for exhaustive law scans, set-backed otherwise."""
    base = sorted(universe)
    if len(base) > 6:
        return PowersetLattice(base)
    subsets = [[]]
    for u in base:
        subsets += [s + [u] for s in subsets]
    names = {frozenset(s): ",".join(sorted(s)) for s in subsets}
    elements = [names[frozenset(s)] for s in sorted(subsets, key=lambda s: (len(s), s))]
    covers = []
    for s in subsets:
        fs = frozenset(s)
        for u in base:
            if u not in fs:
                covers.append((names[fs], names[fs | {u}]))
    return Lattice(elements, covers, "", ",".join(base))


def downset_lattice(poset_elements, poset_leq):
    """Lattice of down-closed subsets of a finite poset (Birkhoff dual).

    poset_leq(x, y) must be a partial order on poset_elements.  Every finite
    distributive lattice arises this way.  Element names are comma-joined
    sorted member lists ('' for the empty set).
    """
    downsets = {frozenset()}
    for p in poset_elements:
        below = frozenset(q for q in poset_elements if poset_leq(q, p))
        downsets |= {d | below for d in list(downsets)}
    # close under unions
    changed = True
    while changed:
        changed = False
        snapshot = list(downsets)
        for i, d1 in enumerate(snapshot):
            for d2 in snapshot[i + 1:]:
                u = d1 | d2
                if u not in downsets:
                    downsets.add(u)
                    changed = True
    def name(d):
        return ",".join(sorted(d))
    ds = sorted(downsets, key=lambda d: (len(d), sorted(d)))
    elements = [name(d) for d in ds]
    covers = []
    for d1 in ds:
        for d2 in ds:
            if d1 < d2 and len(d2 - d1) == 1:
                covers.append((name(d1), name(d2)))
    full = frozenset(poset_elements)
    return Lattice(elements, covers, "", name(full))
