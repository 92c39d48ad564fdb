"""Bundled worked examples: the K4 network and the six two-port matroids."""

from .exterior import Orientation, from_matrix
from .ported import PortedExtensor

K4_NET = """\
# K4 with three ports.  Vertices a, b, c, d.
vertex a
vertex b
vertex c
vertex d
edge p1 c a port
edge p2 b d port
edge p3 a b port
edge e1 a b
edge e2 a d
edge e3 b c
edge e4 d c
"""

K4_PORTS = ("p1", "p2", "p3")
K4_RESISTORS = ("e1", "e2", "e3", "e4")
K4_GROUND = K4_PORTS + K4_RESISTORS

# rows are the oriented cuts of {a}, {b} and {a, d}
K4_N = [
    [-1, 0, 1, 1, 1, 0, 0],
    [0, 1, -1, -1, 0, 1, 0],
    [-1, -1, 1, 1, 0, 0, 1],
]

K4_N_PERP = [
    [0, 0, 1, -1, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 1],
    [0, 1, 1, 0, -1, 0, 0],
    [1, 0, 1, 0, 0, 1, 0],
]

K4_COORDS = {
    ("v1", "v2", "v3"): "1 g1 g2 g3 r4 + 1 g1 g2 g4 r3 + 1 g1 g3 g4 r2 + 1 g2 g3 g4 r1",
    ("i1", "v2", "v3"): "1 g1 g2 r3 r4 + 1 g1 g4 r2 r3 + 1 g2 g3 r1 r4 + 1 g3 g4 r1 r2",
    ("v1", "i1", "v3"): "-1 g1 g4 r2 r3 + 1 g2 g3 r1 r4",
}

# (A, sign) for the two forests behind the [v1 i1 v3] coordinate
K4_FOREST_SIGNS = {("e1", "e4"): -1, ("e2", "e3"): 1}


def k4_extensor():
    return PortedExtensor.from_matrix(K4_PORTS, K4_RESISTORS, K4_N)


def k4_orientation():
    return Orientation(K4_GROUND)


TWO_PORTS = ("p1", "p2")

# name, rows of N over (p1, p2), printed M_0(N) as {(copy, copy): coefficient}
TWO_PORT_TABLE = [
    ("N0(p1)+N0(p2)", [], {("v1", "v2"): 1}),
    ("N0(p1)+N1(p2)", [[0, 1]], {("i2", "v1"): 1}),
    ("N1(p1)+N0(p2)", [[1, 0]], {("i1", "v2"): 1}),
    ("N1(p1)+N1(p2)", [[1, 0], [0, 1]], {("i1", "i2"): 1}),
    ("N1-", [[1, -1]], {("i1", "v1"): 1, ("i1", "v2"): 1, ("i2", "v1"): -1, ("i2", "v2"): -1}),
    ("N1+", [[1, 1]], {("i1", "v2"): 1, ("i1", "v1"): -1, ("i2", "v2"): 1, ("i2", "v1"): -1}),
]

# the printed row whose sign disagrees with M_0[I V] = eps(Vbar V) N[I] N[Vbar]
TWO_PORT_MISPRINT = "N0(p1)+N1(p2)"


def two_port_extensor(rows):
    return PortedExtensor(from_matrix(rows, TWO_PORTS), TWO_PORTS, ())
