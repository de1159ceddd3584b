"""Graphviz renderings of games and simulation traces."""

from .games import vertex_name

_HIGHLIGHT_PENWIDTH = 3


def _quote(text):
    return '"%s"' % str(text).replace("\\", "\\\\").replace('"', '\\"')


def game_to_dot(game, payoffs=None, highlight=None, name="game"):
    """Render a game graph as a DOT digraph.

    payoffs maps vertices to labels shown under the vertex name.  highlight
    is a play (vertex sequence); its edges get penwidth 3.
    """
    hot = set()
    if highlight:
        for a, b in zip(highlight, highlight[1:]):
            hot.add((a, b))
    ids = {v: "v%d" % i for i, v in enumerate(game.vertices)}
    lines = ["digraph %s {" % _quote(name).strip('"'), "  rankdir=LR;"]
    for v in game.vertices:
        label = vertex_name(v)
        if payoffs is not None and v in payoffs:
            label += "\\n" + str(payoffs[v])
        shape = "doublecircle" if v == game.root else "ellipse"
        lines.append("  %s [label=%s, shape=%s];" % (ids[v], _quote(label), shape))
    for frm, to, owner in game.edges:
        attrs = ["label=%s" % _quote(owner)]
        if owner == "O":
            attrs.append("style=solid")
        else:
            attrs.append("style=dashed")
        if (frm, to) in hot:
            attrs.append("penwidth=%d" % _HIGHLIGHT_PENWIDTH)
        lines.append("  %s -> %s [%s];" % (ids[frm], ids[to], ", ".join(attrs)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def trace_to_dot(trace_doc, name="trace"):
    """Render a simulation trace as a grid with the walked path in bold."""
    header = trace_doc["header"]
    grid = header["grid"]
    start = tuple(header["start"])
    objects = {tuple(o["cell"]): o for o in header.get("objects", [])}
    walk = [start]
    for entry in trace_doc.get("entries", []):
        if entry.get("actor") == "system" and "position" in entry:
            pos = tuple(entry["position"])
            if pos != walk[-1]:
                walk.append(pos)
    hot = set(zip(walk, walk[1:]))

    def cid(cell):
        return "c_%d_%d" % cell

    def passable(x, y):
        return grid[y][x] != "#"

    lines = ["digraph %s {" % _quote(name).strip('"'),
             "  node [shape=square, fixedsize=true, width=0.7];"]
    height = len(grid)
    width = len(grid[0]) if height else 0
    for y in range(height):
        for x in range(width):
            cell = (x, y)
            attrs = ["pos=\"%d,%d!\"" % (x, height - 1 - y)]
            if not passable(x, y):
                attrs.append("style=filled")
                attrs.append("fillcolor=black")
                attrs.append("label=\"\"")
            else:
                label = ""
                if cell in objects:
                    obj = objects[cell]
                    label = "%s\\n%s" % (obj["id"], obj["goal"])
                if cell == start:
                    label = (label + "\\nstart").strip("\\n")
                attrs.append("label=%s" % _quote(label))
            lines.append("  %s [%s];" % (cid(cell), ", ".join(attrs)))
    for a, b in zip(walk, walk[1:]):
        lines.append(
            "  %s -> %s [penwidth=%d, color=red];"
            % (cid(a), cid(b), _HIGHLIGHT_PENWIDTH)
        )
    # faint lattice of legal moves keeps the picture readable without a layout pass
    for y in range(height):
        for x in range(width):
            if not passable(x, y):
                continue
            for dx, dy in ((1, 0), (0, 1)):
                xx, yy = x + dx, y + dy
                if xx < width and yy < height and passable(xx, yy):
                    if ((x, y), (xx, yy)) in hot or ((xx, yy), (x, y)) in hot:
                        continue
                    lines.append(
                        "  %s -> %s [dir=none, color=gray80];"
                        % (cid((x, y)), cid((xx, yy)))
                    )
    lines.append("}")
    return "\n".join(lines) + "\n"
