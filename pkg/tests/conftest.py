"""Shared deterministic generators for randomized suites.

Everything takes an explicit random.Random so each suite pins its own seed;
moduli are kept small powers-of-two-ish so lcm growth stays bounded.
"""

import random

import pytest

from ckomega import PeriodicSet, Piece, ProgressionMap

MODULI = (1, 2, 3, 4, 6, 8, 12)


def rand_set(rng: random.Random, max_exc: int = 2, infinite: bool = False) -> PeriodicSet:
    m = rng.choice(MODULI)
    k = rng.randint(1 if infinite else 0, m)
    residues = rng.sample(range(m), k) if k else ()
    added = rng.sample(range(0, 25), rng.randint(0, max_exc))
    removed = rng.sample(range(0, 25), rng.randint(0, max_exc))
    s = PeriodicSet(m, residues, added=added, removed=removed)
    if infinite and s.is_finite:
        return PeriodicSet(m, range(m))
    return s


def rand_infinite_set(rng: random.Random) -> PeriodicSet:
    return rand_set(rng, infinite=True)


def rand_map(rng: random.Random) -> ProgressionMap:
    """A total piecewise-affine map with small moduli and a few table quirks."""
    m = rng.choice((1, 2, 3, 4, 6, 8))
    pieces = []
    table = {}
    stolen = rng.sample(range(0, 12), rng.randint(0, 2))
    for n in stolen:
        table[n] = rng.randint(0, 30)
    holes = PeriodicSet.finite(stolen)
    for r in range(m):
        dom = PeriodicSet.residue_class(r, m) - holes
        e = rng.choice((0, 1, 1, 2, 3, m))
        b = rng.randint(0, 12)
        pieces.append(Piece(dom, r, m, b, e))
    return ProgressionMap(pieces, table)


def rand_move(rng: random.Random, box, cap: int = 64) -> list:
    """A legal E-move against `box`: a list of extra constraints (maybe a stall).

    Splits one source along a residue subdivision (2- or 3-way) or shrinks one
    target to an infinite residue part, so the refinement is never empty.
    """
    from ckomega.boxes import SubbasicBox

    options = []
    for c in box.constraints:
        a, b = c.source, c.target
        res = sorted(a.residues)
        if len(res) >= 2:
            half = PeriodicSet(a.modulus, res[: len(res) // 2])
            options.append([SubbasicBox(a & half, b)])
            if len(res) >= 3:
                one = PeriodicSet(a.modulus, res[:1])
                two = PeriodicSet(a.modulus, res[1:2])
                options.append([SubbasicBox(a & one, b), SubbasicBox(a & two, b)])
        elif res and a.modulus < cap:
            sub = PeriodicSet.residue_class(res[0], 2 * a.modulus)
            options.append([SubbasicBox(a & sub, b)])
        bres = sorted(b.residues)
        if len(bres) >= 2:
            half = PeriodicSet(b.modulus, bres[: len(bres) // 2])
            options.append([SubbasicBox(a, b & half)])
        elif bres and b.modulus < cap:
            sub = PeriodicSet.residue_class(bres[0], 2 * b.modulus)
            options.append([SubbasicBox(a, b & sub)])
    if not options or rng.random() < 0.15:
        return []
    return rng.choice(options)


def rand_chain(rng: random.Random, depth: int):
    """A certified descending chain of boxes below the full-space box."""
    from ckomega.boxes import refine
    from ckomega.schemes import FULL_BOX

    chain = []
    box = FULL_BOX
    for _ in range(depth):
        fine, cert = refine(box, rand_move(rng, box))
        chain.append((fine, cert))
        box = fine
    return chain


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
