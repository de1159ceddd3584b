"""Two-player graph games with lattice-valued payoffs.

A game is a rooted graph whose edges are owned by Opponent ("O") or Player
("P"); plays alternate O first.  Payoff games attach a distributive-lattice
value to every vertex; a strategy wins when every maximal play it allows
ends strictly above bottom.  Tensor is the product graph, the dual flips
edge ownership, and implication is tensor of the dual with the consequent,
with payoffs combined by meet and by Heyting implication respectively.
"""

import json
from collections import deque

from .data import resolve_path
from .errors import (
    ComponentMismatch,
    ForeignElement,
    InteractionOverflow,
    InvalidStrategy,
    LatticeMismatch,
    NotHeyting,
)
from .lattice import lattice_from_doc, load_lattice

_POLS = ("O", "P")


class Game:
    def __init__(self, vertices, root, edges):
        self.vertices = list(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertices")
        if root not in vset:
            raise ForeignElement("root %r is not a vertex" % (root,))
        self.root = root
        self.edges = []
        self.out = {v: [] for v in self.vertices}
        for frm, to, pol in edges:
            if frm not in vset or to not in vset:
                raise ForeignElement("edge (%r, %r) leaves the vertex set"
                                     % (frm, to))
            if pol not in _POLS:
                raise ValueError("edge polarity must be 'O' or 'P'")
            self.edges.append((frm, to, pol))
            self.out[frm].append((to, pol))
        seen = {root}
        todo = deque([root])
        while todo:
            v = todo.popleft()
            for w, _ in self.out[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if seen != vset:
            raise ValueError("unreachable vertices: %r" % (sorted(
                v for v in self.vertices if v not in seen),))

    def moves(self, v, pol):
        return [w for w, p in self.out[v] if p == pol]

    def __repr__(self):
        return "Game(%d vertices, %d edges)" % (len(self.vertices),
                                                len(self.edges))


class PayoffGame:
    """A game with a payoff k(v) in a distributive lattice at each vertex."""

    def __init__(self, game, lattice, k):
        if not lattice.is_distributive():
            raise NotHeyting("payoff lattice must be distributive")
        for v in game.vertices:
            if v not in k:
                raise ForeignElement("no payoff for vertex %r" % (v,))
            if k[v] not in lattice:
                raise ForeignElement("payoff %r outside the lattice" % (k[v],))
        self.game = game
        self.lattice = lattice
        self.k = dict(k)


def dual_game(game):
    flip = {"O": "P", "P": "O"}
    return Game(game.vertices, game.root,
                [(f, t, flip[p]) for f, t, p in game.edges])


def dual_payoff_game(pg, mode="negate"):
    """Dual of a payoff game.  Payoffs are Heyting-negated by default; mode
    'copy' keeps them, for lattices whose negation collapses too much."""
    g = dual_game(pg.game)
    if mode == "negate":
        k = {v: pg.lattice.heyting_neg(pg.k[v]) for v in pg.game.vertices}
    elif mode == "copy":
        k = dict(pg.k)
    else:
        raise ValueError("mode must be 'negate' or 'copy'")
    return PayoffGame(g, pg.lattice, k)


def tensor_game(a, b):
    vertices = [(u, v) for u in a.vertices for v in b.vertices]
    root = (a.root, b.root)
    edges = []
    for f, t, p in a.edges:
        for v in b.vertices:
            edges.append(((f, v), (t, v), p))
    for u in a.vertices:
        for f, t, p in b.edges:
            edges.append(((u, f), (u, t), p))
    # the product of two rooted graphs can strand pairs; keep the reachable part
    out = {v: [] for v in vertices}
    for f, t, p in edges:
        out[f].append((t, p))
    seen = {root}
    todo = deque([root])
    while todo:
        v = todo.popleft()
        for w, _ in out[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    if len(seen) == len(vertices):
        return Game(vertices, root, edges)
    kept = [v for v in vertices if v in seen]
    return Game(kept, root,
                [(f, t, p) for f, t, p in edges if f in seen and t in seen])


def implication_game(a, b):
    return tensor_game(dual_game(a), b)


def _same_lattice(la, lb):
    return la is lb or la.elements == lb.elements


def payoff_tensor(pa, pb):
    if not _same_lattice(pa.lattice, pb.lattice):
        raise LatticeMismatch("payoff lattices differ")
    g = tensor_game(pa.game, pb.game)
    lat = pa.lattice
    k = {(u, v): lat.meet2(pa.k[u], pb.k[v]) for (u, v) in g.vertices}
    return PayoffGame(g, lat, k)


def payoff_implication(pa, pb, dual_payoff="negate"):
    if not _same_lattice(pa.lattice, pb.lattice):
        raise LatticeMismatch("payoff lattices differ")
    g = implication_game(pa.game, pb.game)
    lat = pa.lattice
    k = {(u, v): lat.heyting_implies(pa.k[u], pb.k[v])
         for (u, v) in g.vertices}
    del dual_payoff  # vertex payoffs already combine both sides
    return PayoffGame(g, lat, k)


class Strategy:
    """A deterministic set of even-length alternated plays, O moving first.

    Plays are tuples of vertices beginning at the root; the empty play is
    the one-vertex tuple (root,).
    """

    def __init__(self, game, plays):
        self.game = game
        self.plays = set(map(tuple, plays))
        validate_strategy(self)

    def response(self):
        resp = {}
        for p in self.plays:
            if len(p) >= 3:
                resp[p[:-1]] = p[-1]
        return resp


def validate_strategy(strategy):
    game, plays = strategy.game, strategy.plays
    if (game.root,) not in plays:
        raise InvalidStrategy("must contain the empty play at the root")
    for p in plays:
        if len(p) % 2 == 0:
            raise InvalidStrategy("odd number of moves in %r" % (p,))
        if p[0] != game.root:
            raise InvalidStrategy("play %r does not start at the root" % (p,))
        for i in range(len(p) - 1):
            pol = "O" if i % 2 == 0 else "P"
            if p[i + 1] not in game.moves(p[i], pol):
                raise InvalidStrategy(
                    "no %s-edge %r -> %r" % (pol, p[i], p[i + 1]))
        if len(p) >= 3 and p[:-2] not in plays:
            raise InvalidStrategy("prefix of %r missing" % (p,))
    resp = {}
    for p in plays:
        if len(p) >= 3:
            key = p[:-1]
            if resp.setdefault(key, p[-1]) != p[-1]:
                raise InvalidStrategy(
                    "two responses after %r: %r and %r"
                    % (key, resp[key], p[-1]))
    return True


def maximal_plays(game, strategy):
    """Every play the strategy can be driven into that cannot continue."""
    resp = strategy.response()
    cap = 4 * len(game.vertices) + 4
    out = []
    stack = [(game.root,)]
    while stack:
        p = stack.pop()
        if len(p) > cap:
            raise InteractionOverflow(
                "play of %d moves; the game graph may be cyclic" % (len(p) - 1,))
        omoves = game.moves(p[-1], "O")
        if not omoves:
            out.append(p)
            continue
        for w in omoves:
            q = p + (w,)
            r = resp.get(q)
            if r is None:
                out.append(q)
            else:
                stack.append(q + (r,))
    return out


def is_winning(pg, strategy):
    bot = pg.lattice.bottom
    return all(pg.k[p[-1]] != bot for p in maximal_plays(pg.game, strategy))


def copycat(game):
    """The mirror strategy on game -o game."""
    impl = implication_game(game, game)
    cap = 4 * len(impl.vertices) + 4
    plays = {(impl.root,)}
    queue = deque([(impl.root,)])
    while queue:
        p = queue.popleft()
        if len(p) > cap:
            raise InteractionOverflow("mirror play exceeds bound")
        u, v = p[-1]
        for (w, pol) in impl.out[(u, v)]:
            if pol != "O":
                continue
            wu, wv = w
            if wv == v:
                mirror = (wu, wu)
            else:
                mirror = (wv, wv)
            if mirror not in impl.moves(w, "P"):
                continue
            q = p + (w, mirror)
            if q not in plays:
                plays.add(q)
                queue.append(q)
    return Strategy(impl, plays)


def compose_strategies(game_x, game_y, game_z, sigma, tau):
    """Compose a strategy on X -o Y with one on Y -o Z into X -o Z.

    Runs the two strategies against each other: moves in the shared middle
    game are ping-ponged until one side answers in X or Z.  The number of
    interaction steps is capped by the product of the component sizes.
    """
    impl_xy = implication_game(game_x, game_y)
    impl_yz = implication_game(game_y, game_z)
    impl_xz = implication_game(game_x, game_z)
    if set(sigma.game.vertices) != set(impl_xy.vertices) \
            or sigma.game.root != impl_xy.root:
        raise ComponentMismatch("first strategy is not on X -o Y")
    if set(tau.game.vertices) != set(impl_yz.vertices) \
            or tau.game.root != impl_yz.root:
        raise ComponentMismatch("second strategy is not on Y -o Z")

    resp_s = sigma.response()
    resp_t = tau.response()
    cap = 4 * len(game_x.vertices) * len(game_y.vertices) * len(game_z.vertices)

    plays = {(impl_xz.root,)}
    # state: composite play, sigma play, tau play (all even length)
    queue = deque([((impl_xz.root,), (impl_xy.root,), (impl_yz.root,))])
    while queue:
        cp, sp, tp = queue.popleft()
        if len(cp) > cap:
            raise InteractionOverflow("composite play exceeds bound")
        x, z = cp[-1]
        _, y_s = sp[-1]
        for (w, pol) in impl_xz.out[(x, z)]:
            if pol != "O":
                continue
            wx, wz = w
            if wx != x:
                side, sq, tq = "s", sp + ((wx, y_s),), tp
            else:
                y_t, _ = tp[-1]
                side, sq, tq = "t", sp, tp + ((y_t, wz),)
            steps = 0
            while True:
                steps += 1
                if steps > cap:
                    raise InteractionOverflow(
                        "interaction between strategies did not settle")
                if side == "s":
                    r = resp_s.get(sq)
                    if r is None:
                        break
                    rx, ry = r
                    sq = sq + (r,)
                    if rx != sq[-2][0]:
                        # answered in X: composite P-move
                        nq = cp + (w, (rx, wz))
                        plays.add(nq)
                        queue.append((nq, sq, tq))
                        break
                    # answered in Y: forward to tau as an O-move
                    y_t, z_t = tq[-1]
                    tq = tq + ((ry, z_t),)
                    side = "t"
                else:
                    r = resp_t.get(tq)
                    if r is None:
                        break
                    ry, rz = r
                    tq = tq + (r,)
                    if rz != tq[-2][1]:
                        nq = cp + (w, (wx, rz))
                        plays.add(nq)
                        queue.append((nq, sq, tq))
                        break
                    x_s, y_s2 = sq[-1]
                    sq = sq + ((x_s, ry),)
                    side = "s"
    return Strategy(impl_xz, plays)


# serialization --------------------------------------------------------

def vertex_name(v):
    if isinstance(v, tuple):
        return "(" + ",".join(vertex_name(c) for c in v) + ")"
    return str(v)


def game_from_doc(doc):
    return Game(doc["vertices"], doc["root"],
                [(f, t, p) for f, t, p in doc["edges"]])


def payoff_game_from_doc(doc, lattice=None, base_dir=None):
    game = game_from_doc(doc)
    if lattice is None:
        lat_field = doc["lattice"]
        if isinstance(lat_field, str):
            lattice = load_lattice(resolve_path(lat_field, base_dir))
        else:
            lattice = lattice_from_doc(lat_field)
    return PayoffGame(game, lattice, dict(doc["k"]))


def load_game(path, lattice=None):
    import os
    path = resolve_path(path)
    with open(path) as fh:
        doc = json.load(fh)
    if "k" in doc or "lattice" in doc:
        return payoff_game_from_doc(doc, lattice=lattice,
                                    base_dir=os.path.dirname(path))
    return game_from_doc(doc)


def game_to_doc(game, payoff=None):
    doc = {
        "vertices": [vertex_name(v) for v in game.vertices],
        "root": vertex_name(game.root),
        "edges": [[vertex_name(f), vertex_name(t), p]
                  for f, t, p in game.edges],
    }
    if payoff is not None:
        doc["k"] = {vertex_name(v): payoff.k[v] for v in game.vertices}
    return doc
