"""Shared fixtures.

Expensive objects (the symplectic quadrangles, the Payne-derived
fixture, its automorphism group and regular subgroups) are computed once
per session and timed, so the acceptance module can attribute runtime to
whichever criterion triggers the computation first.
"""

from __future__ import annotations

import time

import pytest

import gqforge as gq


class HeavyStore:
    def __init__(self):
        self._values = {}
        self.elapsed: dict[str, float] = {}

    def get(self, name: str):
        if name not in self._values:
            t0 = time.perf_counter()
            self._values[name] = self._build(name)
            self.elapsed[name] = time.perf_counter() - t0
        return self._values[name]

    def _build(self, name: str):
        if name == "w2":
            return gq.symplectic_gq(2)
        if name == "w3":
            return gq.symplectic_gq(3)
        if name == "payne":
            return gq.payne_derive(self.get("w3"), 0)
        if name == "w2_aut":
            return gq.automorphisms(self.get("w2"))
        if name == "payne_aut":
            return gq.automorphisms(self.get("payne"))
        if name == "payne_regulars":
            return gq.regular_subgroups(
                self.get("payne"), 27, "points", aut=self.get("payne_aut")
            )
        raise KeyError(name)


_STORE = HeavyStore()


@pytest.fixture(scope="session")
def store() -> HeavyStore:
    return _STORE


def heisenberg27() -> gq.FiniteGroup:
    """Order-27 extraspecial group of exponent 3, built from coordinates.

    (a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b') over GF(3); serves as an
    independent oracle for class structure of the searched groups.
    """

    def enc(a, b, c):
        return (a * 3 + b) * 3 + c

    table = [[0] * 27 for _ in range(27)]
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for a2 in range(3):
                    for b2 in range(3):
                        for c2 in range(3):
                            table[enc(a, b, c)][enc(a2, b2, c2)] = enc(
                                (a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3
                            )
    return gq.group_from_table(table, name="heisenberg27")
