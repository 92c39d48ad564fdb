"""M_0 for the six oriented matroids on two ports.

With no resistors, M_E reduces to the closed form
M[I V] = eps(Vbar V) N[I] N[Vbar].  One row of the published table lists
the opposite sign from the one this formula gives; the script flags it.

    python demos/two_port_matroids.py
"""

from extutte import data
from extutte.ported import m_empty
from extutte.ring import render


def main():
    for name, rows, printed in data.TWO_PORT_TABLE:
        value = m_empty(data.two_port_extensor(rows), None)
        terms = " + ".join(f"{render(value.coord(k))} {''.join(k)}" for k in value.support())
        agrees = all(value.coord(k) == c for k, c in printed.items()) and len(value.support()) == len(printed)
        flag = "" if agrees else "   <- published table has the opposite sign"
        print(f"{name:>15}: {terms}{flag}")


if __name__ == "__main__":
    main()
