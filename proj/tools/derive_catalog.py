#!/usr/bin/env python3
"""Derive the five-element catalog topologies from their impedance patterns.

Each catalog configuration has a known driving-point impedance pattern: a pair
of polynomials in s whose coefficients are products of element constants
(damping rates c, stiffnesses k, inertances b).  This script searches all
two-terminal five-element networks (series-parallel trees and the four-node
bridge) for the unique topology whose impedance matches each pattern exactly,
then finds the matching dual topology for the derived quartet members.

It is a development/regeneration aid: the C++ catalog in src/catalog.cpp was
transcribed from this script's output, and tests/catalog_test.cpp re-verifies
every template against the same patterns numerically.

Run:  python3 tools/derive_catalog.py
"""

import itertools
import sympy as sy

s = sy.symbols("s")
ci1, ci2, ki1, ki2 = sy.symbols("ci1 ci2 ki1 ki2", positive=True)
b1, b2 = sy.symbols("b1 b2", positive=True)

# slot -> (kind, impedance); ci/ki are reciprocal damping/stiffness
SLOT_Z = {
    "c1": ("damper", ci1),
    "c2": ("damper", ci2),
    "k1": ("spring", ki1 * s),
    "k2": ("spring", ki2 * s),
    "b1": ("inerter", 1 / (b1 * s)),
    "b2": ("inerter", 1 / (b2 * s)),
}

# Expected impedance patterns, numerator and denominator, per base member.
PATTERNS = {
    "N1a": (
        ci1*ki1*ki2*b1*s**3 + ci1*ci2*(ki1+ki2)*b1*s**2 + ci1*ki1*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1+ci2)*(ki1+ki2)*b1*s**2 + ki1*s + ci1 + ci2,
    ),
    "N2a": (
        ci1*ki1*ki2*b1*s**3 + ci1*ci2*ki1*b1*s**2 + ci1*(ki1+ki2)*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1*ki1+ci1*ki2+ci2*ki1)*b1*s**2
        + (ci1*ci2*b1+ki1+ki2)*s + ci2,
    ),
    "N3a": (
        ci1*ki1*ki2*b1*s**3 + ci1*ci2*ki1*b1*s**2 + ci1*(ki1+ki2)*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1*ki2+ci2*ki1)*b1*s**2
        + (ci1*ci2*b1+ki1+ki2)*s + ci1 + ci2,
    ),
    "N4a": (
        ci1*ki1*ki2*b1*s**3 + ci1*ci2*(ki1+ki2)*b1*s**2 + ci1*ki1*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1*ki2+ci2*ki1+ci2*ki2)*b1*s**2
        + (ci1*ci2*b1+ki1)*s + ci1 + ci2,
    ),
    "N5a": (
        ci2*ki1*ki2*b1*s**3 + (ci1*ci2*b1+ki1)*ki2*s**2
        + (ci1*ki2+ci2*ki1)*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1+ci2)*ki2*b1*s**2 + (ki1+ki2)*s + ci1 + ci2,
    ),
    "N6a": (
        ci2*ki1*ki2*b1*s**3 + (ci1*ci2*b1+ki1)*ki2*s**2
        + (ci1*ki2+ci2*ki1)*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1*ki2+ci2*ki1+ci2*ki2)*s**2
        + (ci1*ci2*b1+ki2)*s + ci2,
    ),
    "N7a": (
        (ci1+ci2)*ki1*ki2*b1*s**3 + ci1*ci2*ki1*b1*s**2
        + (ci1+ci2)*(ki1+ki2)*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1*ki2+ci2*(ki1+ki2))*b1*s**2
        + (ci1*ci2*b1+ki1+ki2)*s + ci1,
    ),
    "N8a": (
        ci2*ki1*ki2*b1*s**3 + (ci1*ci2*(ki1+ki2)*b1+ki1*ki2)*s**2
        + (ci1*(ki1+ki2)+ci2*ki1)*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1*(ki1+ki2)+ci2*ki2)*b1*s**2
        + (ci1*ci2*b1+ki1+ki2)*s + ci2,
    ),
    "N9a": (
        (ci1+ci2)*ki1*ki2*b1*s**3 + (ci1*ci2*(ki1+ki2)*b1+ki1*ki2)*s**2
        + (ci1*ki2+ci2*ki1)*s + ci1*ci2,
        ki1*ki2*b1*s**3 + (ci1*ki1+ci2*ki2)*b1*s**2
        + (ci1*ci2*b1+ki1+ki2)*s + ci1 + ci2,
    ),
    "N10a": (
        (ci1+ci2)*ki1*ki2*b1*s**3 + (ci1*ci2*b1+ki1)*ki2*s**2
        + ((ci1+ci2)*ki1+ci1*ki2)*s + ci1*ci2,
        ki1*ki2*b1*s**3 + ((ci1+ci2)*ki1+ci2*ki2)*b1*s**2
        + (ci1*ci2*b1+ki2)*s + ci1 + ci2,
    ),
    "N11": (
        ci1*ki1*ki2*b1*b2*s**4 + ki1*ki2*(b1+b2)*s**3
        + ci1*(ki1*b1+ki2*b2)*s**2 + (ki1+ki2)*s + ci1,
        ki1*ki2*b1*b2*s**4 + ci1*(ki1+ki2)*b1*b2*s**3
        + (ki1*b2+ki2*b1)*s**2 + ci1*(b1+b2)*s + 1,
    ),
    # N12a is recorded for reference only; it reduces in degree for any
    # positive element values, so it never enters the catalog.
    "N12a": (
        ci1*ki1*ki2*b1*b2*s**4 + ki1*ki2*(b1+b2)*s**3
        + ci1*(ki1*b2+ki2*b1+ki2*b2)*s**2 + ki1*s + ci1,
        ki1*ki2*b1*b2*s**4 + ci1*ki1*b1*b2*s**3
        + (ki1*b1+ki2*b1+ki2*b2)*s**2 + ci1*(b1+b2)*s + 1,
    ),
}

SLOTS_STD = ("c1", "c2", "k1", "k2", "b1")
SLOTS_N11 = ("c1", "k1", "k2", "b1", "b2")


def all_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def set_partitions(items):
    """All partitions of items (list) into >= 2 nonempty blocks."""
    for part in all_partitions(items):
        if len(part) >= 2:
            yield part


def sp_trees(items, forbid=None):
    """All series-parallel trees over the given leaf slots.

    A tree is a slot name, or ('S', children) / ('P', children) where no
    child repeats the parent's operator (canonical form).
    """
    if len(items) == 1:
        yield items[0]
        return
    for op in ("S", "P"):
        if op == forbid:
            continue
        for blocks in set_partitions(items):
            pools = [list(sp_trees(b, forbid=op)) for b in blocks]
            for combo in itertools.product(*pools):
                yield (op, list(combo))


def tree_impedance(tree):
    if isinstance(tree, str):
        return SLOT_Z[tree][1]
    op, children = tree
    if op == "S":
        return sy.cancel(sum(tree_impedance(c) for c in children))
    return sy.cancel(1 / sum(1 / tree_impedance(c) for c in children))


def rational_equal(z, num, den):
    return sy.simplify(sy.together(z - num / den)) == 0


def quick_match(z, num, den, subs):
    try:
        lhs = complex(z.subs(subs))
        rhs = complex((num / den).subs(subs))
    except Exception:
        return False
    return abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


SUBS_POOL = [
    {ci1: sy.Rational(3, 7), ci2: sy.Rational(5, 3), ki1: sy.Rational(7, 2),
     ki2: sy.Rational(2, 9), b1: sy.Rational(11, 4), b2: sy.Rational(4, 13),
     s: sy.Rational(17, 5)},
    {ci1: sy.Rational(9, 5), ci2: sy.Rational(1, 6), ki1: sy.Rational(4, 11),
     ki2: sy.Rational(13, 3), b1: sy.Rational(2, 7), b2: sy.Rational(19, 6),
     s: sy.Rational(3, 8)},
]


def find_sp(name, num, den, slots):
    hits = []
    for tree in sp_trees(list(slots)):
        z = tree_impedance(tree)
        if all(quick_match(z, num, den, sub) for sub in SUBS_POOL):
            if rational_equal(z, num, den):
                hits.append(tree)
    return hits


BRIDGE_EDGES = [("a", "n1"), ("a", "n2"), ("n1", "ap"), ("n2", "ap"),
                ("n1", "n2")]


def bridge_impedance(assign, zmap=None):
    """assign: tuple of 5 slot names for BRIDGE_EDGES order."""
    zmap = zmap or {k: v for k, (_, v) in SLOT_Z.items()}
    nodes = ["a", "n1", "n2"]  # ap grounded
    Y = sy.zeros(3, 3)
    for (u, v), slot in zip(BRIDGE_EDGES, assign):
        y = 1 / zmap[slot]
        iu = nodes.index(u) if u in nodes else None
        iv = nodes.index(v) if v in nodes else None
        if iu is not None:
            Y[iu, iu] += y
        if iv is not None:
            Y[iv, iv] += y
        if iu is not None and iv is not None:
            Y[iu, iv] -= y
            Y[iv, iu] -= y
    rhs = sy.Matrix([1, 0, 0])
    V = Y.LUsolve(rhs)
    return sy.cancel(sy.together(V[0]))


def find_bridge(name, num, den, slots):
    hits = []
    seen = set()
    for assign in itertools.permutations(slots):
        # bridge symmetry: swapping (n1,n2) or (a,ap) maps assignments onto
        # each other; canonicalize to cut the search
        canon = min(
            assign,
            (assign[1], assign[0], assign[3], assign[2], assign[4]),
            (assign[2], assign[3], assign[0], assign[1], assign[4]),
            (assign[3], assign[2], assign[1], assign[0], assign[4]),
        )
        if canon in seen:
            continue
        seen.add(canon)
        z = bridge_impedance(assign)
        if all(quick_match(z, num, den, sub) for sub in SUBS_POOL):
            if rational_equal(z, num, den):
                hits.append(assign)
    return hits


def dual_value_map():
    """Impedance substitution realizing the dual network's element values.

    Dual member: every element value v -> 1/v with spring<->inerter swap, so
    a slot holding damper 1/ci gets damper ci, spring ki*s gets inerter with
    inertance ki (impedance 1/(ki*s)), inerter b gets spring with stiffness b
    (impedance s/b).
    """
    return {
        "c1": 1 / ci1, "c2": 1 / ci2,
        "k1": 1 / (ki1 * s), "k2": 1 / (ki2 * s),
        "b1": b1 * s, "b2": b2 * s,
    }


def tree_impedance_mapped(tree, zmap):
    if isinstance(tree, str):
        return zmap[tree]
    op, children = tree
    if op == "S":
        return sy.cancel(sum(tree_impedance_mapped(c, zmap) for c in children))
    return sy.cancel(1 / sum(1 / tree_impedance_mapped(c, zmap)
                             for c in children))


def sp_dual(tree):
    if isinstance(tree, str):
        return tree
    op, children = tree
    return ("P" if op == "S" else "S", [sp_dual(c) for c in children])


def verify_sp_dual(name, tree, num, den):
    zd = tree_impedance_mapped(sp_dual(tree), dual_value_map())
    ok = sy.simplify(sy.together(zd - den / num)) == 0
    return ok


def find_bridge_dual(name, assign, num, den, slots):
    zmap = dual_value_map()
    hits = []
    for cand in itertools.permutations(slots):
        z = bridge_impedance(cand, zmap)
        if all(quick_match(z, den, num, sub) for sub in SUBS_POOL):
            if rational_equal(z, den, num):
                hits.append(cand)
                break
    return hits


def tree_to_netlist(tree):
    """Flatten an SP tree to (edges, n_internal); nodes a=terminal 0,
    ap=terminal 1, internal nodes numbered from 2."""
    edges = []
    counter = [2]

    def walk(t, u, v):
        if isinstance(t, str):
            edges.append((t, u, v))
            return
        op, children = t
        if op == "P":
            for c in children:
                walk(c, u, v)
        else:
            prev = u
            for i, c in enumerate(children):
                nxt = v if i == len(children) - 1 else counter[0]
                if nxt != v:
                    counter[0] += 1
                walk(c, prev, nxt)
                prev = nxt

    walk(tree, 0, 1)
    return edges, counter[0] - 2


def main():
    for name, (num, den) in PATTERNS.items():
        slots = SLOTS_N11 if name in ("N11", "N12a") else SLOTS_STD
        if name in ("N7a", "N8a", "N9a", "N10a", "N11", "N12a"):
            hits = find_bridge(name, num, den, slots)
            print(f"{name}: bridge matches: {hits}")
            if hits:
                duals = find_bridge_dual(name, hits[0], num, den, slots)
                print(f"{name}: dual bridge: {duals}")
        else:
            hits = find_sp(name, num, den, slots)
            print(f"{name}: sp matches: {hits}")
            if hits:
                t = hits[0]
                print(f"{name}: netlist: {tree_to_netlist(t)}")
                ok = verify_sp_dual(name, t, num, den)
                print(f"{name}: dual tree: {sp_dual(t)} verified={ok}")
                print(f"{name}: dual netlist: {tree_to_netlist(sp_dual(t))}")


if __name__ == "__main__":
    main()
