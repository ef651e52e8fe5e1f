"""Shipped suspension-system fixtures and the system file format.

File format (one directive per line, ``#`` comments allowed)::

    version 1
    name golden_mean
    vertices 2
    betti 0
    edge src=0 dst=0 roof=1 potential=0
    edge src=0 dst=1 roof=1 potential=0 labels=
    edge src=1 dst=0 roof=1 potential=0

``labels`` is a comma-separated list of ``betti`` integers (omitted or empty
when ``betti`` is 0).  Unknown directives or keys are rejected.
"""

import numpy as np

from .symbolic import MarkovShift, SuspensionSystem

SQRT2_12 = 1.414213562373  # sqrt(2) rounded to 12 digits: irrational-ratio roof


def full_shift(n_symbols: int) -> MarkovShift:
    return MarkovShift(1, [(0, 0)] * n_symbols)


def golden_mean_shift() -> MarkovShift:
    # transitions 0->0, 0->1, 1->0 on two vertices; three edge symbols
    return MarkovShift(2, [(0, 0), (0, 1), (1, 0)])


def make_fixture(name: str) -> SuspensionSystem:
    """Build a shipped fixture by name (see :data:`FIXTURES`)."""
    try:
        builder = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from None
    return builder()


def _full2():
    return SuspensionSystem(full_shift(2), [1.0, 1.0], name="full2")


def _full2_symmetric():
    return SuspensionSystem(full_shift(2), [1.0, 1.0],
                            labels=[[1], [-1]], name="full2_symmetric")


def _golden_mean():
    return SuspensionSystem(golden_mean_shift(), [1.0, 1.0, 1.0],
                            name="golden_mean")


def _golden_mean_labeled():
    return SuspensionSystem(golden_mean_shift(), [1.0, 1.0, 1.0],
                            labels=[[1], [-1], [0]], name="golden_mean_labeled")


def _asym_two_vertex():
    # cycle classes: a=+1, d=-1, bc=-1; homologically full with a skew
    # winding mean, so the pressure minimizer on cohomology is off-center
    # and class-0 orbits have genuinely varying edge frequencies.
    shift = MarkovShift(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    return SuspensionSystem(shift, [1.0, 1.0, 1.0, 1.0],
                            labels=[[1], [-1], [0], [-1]],
                            name="asym_two_vertex")


def _grid_two_labels():
    # four self-loop symbols carrying the unit classes of Z^2
    return SuspensionSystem(full_shift(4), [1.0] * 4,
                            labels=[[1, 0], [-1, 0], [0, 1], [0, -1]],
                            name="grid_two_labels")


def _weakmix2():
    return SuspensionSystem(full_shift(2), [1.0, SQRT2_12], name="weakmix2")


def _template2():
    return SuspensionSystem(full_shift(2), [1.0, 1.0], name="template2")


FIXTURES = {
    "full2": _full2,
    "full2_symmetric": _full2_symmetric,
    "golden_mean": _golden_mean,
    "golden_mean_labeled": _golden_mean_labeled,
    "asym_two_vertex": _asym_two_vertex,
    "grid_two_labels": _grid_two_labels,
    "weakmix2": _weakmix2,
    "template2": _template2,
}


class FixtureFormatError(ValueError):
    """A system file violated the documented schema."""


def save_system(sys: SuspensionSystem, path) -> None:
    lines = ["version 1"]
    if sys.name:
        lines.append(f"name {sys.name}")
    lines.append(f"vertices {sys.shift.n_vertices}")
    lines.append(f"betti {sys.betti}")
    for e in range(sys.shift.n_edges):
        parts = [f"edge src={sys.shift.edge_src[e]}",
                 f"dst={sys.shift.edge_dst[e]}",
                 f"roof={sys.roof[e]!r}",
                 f"potential={sys.potential[e]!r}"]
        if sys.betti:
            parts.append("labels=" + ",".join(str(x) for x in sys.labels[e]))
        lines.append(" ".join(parts))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_system(path) -> SuspensionSystem:
    version = None
    name = ""
    n_vertices = None
    betti = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "version":
                version = rest.strip()
                if version != "1":
                    raise FixtureFormatError(
                        f"{path}:{lineno}: unsupported version {version!r}")
            elif head == "name":
                name = rest.strip()
            elif head == "vertices":
                n_vertices = _parse_int(rest, path, lineno)
            elif head == "betti":
                betti = _parse_int(rest, path, lineno)
            elif head == "edge":
                edges.append(_parse_edge(rest, path, lineno))
            else:
                raise FixtureFormatError(
                    f"{path}:{lineno}: unknown directive {head!r}")
    if version is None:
        raise FixtureFormatError(f"{path}: missing version directive")
    if n_vertices is None or betti is None or not edges:
        raise FixtureFormatError(f"{path}: needs vertices, betti and edges")
    for lineno, e in enumerate(edges):
        if len(e["labels"]) != betti:
            raise FixtureFormatError(
                f"{path}: edge {lineno} has {len(e['labels'])} labels, betti is {betti}")
    shift = MarkovShift(n_vertices, [(e["src"], e["dst"]) for e in edges])
    labels = np.array([e["labels"] for e in edges], dtype=np.int64) \
        if betti else None
    return SuspensionSystem(shift,
                            [e["roof"] for e in edges],
                            [e["potential"] for e in edges],
                            labels, name=name)


def _parse_int(text, path, lineno) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise FixtureFormatError(f"{path}:{lineno}: expected integer, got {text!r}") from None


_EDGE_KEYS = ("src", "dst", "roof", "potential", "labels")


def _parse_edge(rest, path, lineno) -> dict:
    out = {"labels": []}
    for token in rest.split():
        key, sep, value = token.partition("=")
        if not sep or key not in _EDGE_KEYS:
            raise FixtureFormatError(f"{path}:{lineno}: bad edge field {token!r}")
        if key in ("src", "dst"):
            out[key] = _parse_int(value, path, lineno)
        elif key in ("roof", "potential"):
            try:
                out[key] = float(value)
            except ValueError:
                raise FixtureFormatError(
                    f"{path}:{lineno}: bad float {value!r}") from None
        else:
            out["labels"] = [_parse_int(x, path, lineno)
                             for x in value.split(",") if x != ""]
    for key in ("src", "dst", "roof"):
        if key not in out:
            raise FixtureFormatError(f"{path}:{lineno}: edge missing {key!r}")
    out.setdefault("potential", 0.0)
    return out
