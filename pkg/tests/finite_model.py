"""Exhaustive finite-model oracle for box identities.

Over a finite universe U, a box [A, B] is interpreted as the set of ALL
functions U -> U whose image of A lies in B.  Sets are bitmasks over U and
a collection of functions is a bitmask over the |U|^|U| function table, so
box intersections are integer ANDs and the oracle stays independent of the
package's symbolic machinery.
"""

from itertools import product


class FiniteModel:
    def __init__(self, size: int):
        self.size = size
        self.sets = list(range(1 << size))
        self.functions = list(product(range(size), repeat=size))
        # member mask per (A, B): bit f set iff f(A) subset of B
        self._box = {}
        images = []
        for f in self.functions:
            img = [0] * (1 << size)
            for a in self.sets:
                m = 0
                for x in range(size):
                    if (a >> x) & 1:
                        m |= 1 << f[x]
                img[a] = m
            images.append(img)
        for a in self.sets:
            for b in self.sets:
                mask = 0
                for i, img in enumerate(images):
                    if img[a] & ~b == 0:
                        mask |= 1 << i
                self._box[(a, b)] = mask

    def box(self, a: int, b: int) -> int:
        """Bitmask of the functions in [a, b]."""
        return self._box[(a, b)]

    def n1_identity_holds(self, a0, b0, a1, b1) -> bool:
        lhs = self.box(a0, b0) & self.box(a1, b1)
        rhs = (
            self.box(a0 & a1, b0 & b1)
            & self.box(a0 & ~a1 & self.full, b0)
            & self.box(a1 & ~a0 & self.full, b1)
        )
        return lhs == rhs

    def fix_criterion_matches(self, c, a, b) -> bool:
        """The [C,C] vs [A,B] emptiness criterion, for disjoint non-empty A, B."""
        empty = (self.box(c, c) & self.box(a, b)) == 0
        criterion = (c & a != 0) and (c & b == 0)
        return empty == criterion

    @property
    def full(self) -> int:
        return (1 << self.size) - 1
