"""Hasse diagrams in Graphviz DOT."""


def _quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(poset, highlight=(), title=None):
    """DOT source for the Hasse diagram of ``poset``, drawn bottom to top.

    Points in ``highlight`` (names or a point set) are filled.
    """
    marked = set(highlight.members if hasattr(highlight, "members") else highlight)
    name = title or poset.name or "poset"
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=ellipse];"]
    for i in poset.display_order:
        x = poset.elements[i]
        attrs = ' [style=filled, fillcolor="lightgrey"]' if x in marked else ""
        lines.append(f"  {_quote(x)}{attrs};")
    for a, b in poset.covers():
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def config_dot(config):
    """Hasse diagram of ``Y`` with the points outside ``phi(X1 × X2)`` highlighted."""
    return hasse_dot(config.y, highlight=config.z, title=config.name)
