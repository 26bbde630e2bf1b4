#!/usr/bin/env python3
"""Regenerates data/catalog.json.

Every group is built from an explicit geometric or matrix model, closed
under multiplication, and written out as 1-based image arrays. Named
subgroups are set stabilizers inside the model; their generators are found
by sampling until the sampled elements generate the full stabilizer.

Usage: python3 tools/catalog/gen_catalog.py > data/catalog.json
"""
import itertools
import json
import math
import random
import sys

RNG = random.Random(20240611)


def compose(p, q):
    """(p*q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def small_generating_set(elements, degree, max_tries=2000):
    target = len(elements)
    pool = sorted(elements)
    for size in range(1, 6):
        for _ in range(max_tries // size):
            gens = [RNG.choice(pool) for _ in range(size)]
            if len(closure(gens, degree)) == target:
                return gens
    raise RuntimeError("no small generating set found")


def one_based(p):
    return [x + 1 for x in p]


def entry(name, degree, gens, order, provenance, subgroups):
    return {
        "name": name,
        "degree": degree,
        "order": order,
        "provenance": provenance,
        "generators": [one_based(g) for g in gens],
        "subgroups": subgroups,
    }


def sub_entry(name, gens, order, note):
    return {"name": name, "order": order, "note": note,
            "generators": [one_based(g) for g in gens]}


def from_cycles(degree, cycles):
    img = list(range(degree))
    for c in cycles:
        for i, a in enumerate(c):
            img[a - 1] = c[(i + 1) % len(c)] - 1
    return tuple(img)


# ---------------------------------------------------------------- small groups

def small_groups():
    out = []
    c2 = [from_cycles(2, [(1, 2)])]
    out.append(entry("C2", 2, c2, 2, "cyclic group of order 2 on 2 points", []))
    c5 = [from_cycles(5, [(1, 2, 3, 4, 5)])]
    out.append(entry("C5", 5, c5, 5, "cyclic group of order 5 on 5 points", []))
    s3 = [from_cycles(3, [(1, 2)]), from_cycles(3, [(1, 2, 3)])]
    out.append(entry("S3", 3, s3, 6, "symmetric group on 3 points",
                     [sub_entry("C3", [from_cycles(3, [(1, 2, 3)])], 3,
                                "alternating subgroup")]))
    a5 = [from_cycles(5, [(1, 2, 3, 4, 5)]), from_cycles(5, [(3, 4, 5)])]
    out.append(entry("A5", 5, a5, 60, "alternating group on 5 points",
                     [sub_entry("C5", [from_cycles(5, [(1, 2, 3, 4, 5)])], 5,
                                "Sylow 5-subgroup generated by (1 2 3 4 5)")]))
    s5 = [from_cycles(5, [(1, 2, 3, 4, 5)]), from_cycles(5, [(1, 2)])]
    out.append(entry("S5", 5, s5, 120, "symmetric group on 5 points",
                     [sub_entry("S4", [from_cycles(5, [(1, 2, 3, 4)]),
                                       from_cycles(5, [(1, 2)])], 24,
                                "point stabilizer of 5")]))
    return out


# ------------------------------------------------------------------- M12

def m12():
    gens = [from_cycles(12, [(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11)]),
            from_cycles(12, [(3, 7, 11, 8), (4, 10, 5, 6)]),
            from_cycles(12, [(1, 12), (2, 11), (3, 6), (4, 8), (5, 9), (7, 10)])]
    group = closure(gens, 12)
    assert len(group) == 95040, len(group)
    m11 = [g for g in group if g[11] == 11]
    assert len(m11) == 7920
    # Find a hexad: a 6-set whose orbit has 132 members.
    hexad = None
    for cand in itertools.combinations(range(12), 6):
        s = frozenset(cand)
        stab = sum(1 for g in group if frozenset(g[x] for x in s) == s)
        if stab == 720:
            hexad = s
            break
    comp = frozenset(range(12)) - hexad
    pair = {hexad, comp}
    h1 = [g for g in group
          if {frozenset(g[x] for x in hexad), frozenset(g[x] for x in comp)} == pair]
    assert len(h1) == 1440, len(h1)
    orbit0 = {g[0] for g in h1}
    assert len(orbit0) == 12
    subs = [
        sub_entry("M10.2", small_generating_set(h1, 12), 1440,
                  "stabilizer of the complementary hexad pair {%s | %s}; transitive on 12 points"
                  % (",".join(str(x + 1) for x in sorted(hexad)),
                     ",".join(str(x + 1) for x in sorted(comp)))),
        sub_entry("M11", small_generating_set(m11, 12), 7920,
                  "point stabilizer of 12"),
    ]
    return entry("M12", 12, gens, 95040,
                 "Mathieu group M12 on 12 points, standard generators "
                 "(1..11), (3,7,11,8)(4,10,5,6), (1,12)(2,11)(3,6)(4,8)(5,9)(7,10)",
                 subs)


# ------------------------------------------------------ PSU(4,2) = PSp(4,3)

def psp43():
    p = 3

    def form(x, y):
        return (x[0] * y[2] + x[1] * y[3] - x[2] * y[0] - x[3] * y[1]) % p

    def normalize(v):
        for c in v:
            if c % p:
                inv = pow(c, p - 2, p)
                return tuple((inv * a) % p for a in v)
        raise ValueError

    points = sorted({normalize(v) for v in itertools.product(range(p), repeat=4)
                     if any(v)})
    assert len(points) == 40
    index = {pt: i for i, pt in enumerate(points)}

    def transvection_perm(v):
        img = []
        for x in points:
            c = form(x, v)
            y = tuple((a + c * b) % p for a, b in zip(x, v))
            img.append(index[normalize(y)])
        return tuple(img)

    trans = [transvection_perm(v) for v in points]
    group = closure(trans, 40)
    assert len(group) == 25920, len(group)
    gens = small_generating_set(group, 40)

    def span(basis):
        vecs = set()
        for coeffs in itertools.product(range(p), repeat=len(basis)):
            v = tuple(sum(c * b[k] for c, b in zip(coeffs, basis)) % p for k in range(4))
            if any(v):
                vecs.add(normalize(v))
        return frozenset(index[v] for v in vecs)

    e = [tuple(1 if i == j else 0 for i in range(4)) for j in range(4)]
    ti_line = span([e[0], e[1]])
    assert len(ti_line) == 4
    hyp = span([e[0], e[2]]) | span([e[1], e[3]])
    assert len(hyp) == 8

    def set_stab(s):
        return [g for g in group if frozenset(g[x] for x in s) == s]

    h1 = set_stab(ti_line)
    h2 = set_stab(hyp)
    assert len(h1) == 648 and len(h2) == 576, (len(h1), len(h2))
    subs = [
        sub_entry("3^3:S4", small_generating_set(h1, 40), 648,
                  "stabilizer of the totally isotropic line <e1,e2>"),
        sub_entry("2.(A4xA4).2", small_generating_set(h2, 40), 576,
                  "stabilizer of the hyperbolic pair {<e1,e3>, <e2,e4>}"),
    ]
    return entry("PSU(4,2)", 40, gens, 25920,
                 "PSp(4,3) ~ PSU(4,2) acting on the 40 points of PG(3,3) with "
                 "symplectic form x1y3+x2y4-x3y1-x4y2; generated by transvections",
                 subs)


# ------------------------------------------------------------- U(3,3)

class GF9:
    """a + b*i with i^2 = -1 over F3, stored as a pair."""

    @staticmethod
    def add(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)

    @staticmethod
    def mul(x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % 3, (x[0] * y[1] + x[1] * y[0]) % 3)

    @staticmethod
    def conj(x):
        return (x[0], (-x[1]) % 3)

    ZERO = (0, 0)
    ONE = (1, 0)
    ALL = [(a, b) for a in range(3) for b in range(3)]

    @staticmethod
    def inv(x):
        for y in GF9.ALL:
            if GF9.mul(x, y) == GF9.ONE:
                return y
        raise ZeroDivisionError


def u33():
    F = GF9

    def herm(x, y):
        # x1*conj(y3) + x2*conj(y2) + x3*conj(y1)
        acc = F.ZERO
        for i, j in ((0, 2), (1, 1), (2, 0)):
            acc = F.add(acc, F.mul(x[i], F.conj(y[j])))
        return acc

    def matvec(m, v):
        out = []
        for r in range(3):
            acc = F.ZERO
            for c in range(3):
                acc = F.add(acc, F.mul(m[r][c], v[c]))
            out.append(acc)
        return tuple(out)

    minus_one = (2, 0)

    def det(m):
        def d2(a, b, c, d):
            return F.add(F.mul(a, d), F.mul(minus_one, F.mul(b, c)))
        t0 = F.mul(m[0][0], d2(m[1][1], m[1][2], m[2][1], m[2][2]))
        t1 = F.mul(m[0][1], d2(m[1][0], m[1][2], m[2][0], m[2][2]))
        t2 = F.mul(m[0][2], d2(m[1][0], m[1][1], m[2][0], m[2][1]))
        return F.add(F.add(t0, F.mul(minus_one, t1)), t2)

    basis = [tuple(F.ONE if i == j else F.ZERO for i in range(3)) for j in range(3)]

    def unitary(m):
        cols = [matvec(m, e) for e in basis]
        for i in range(3):
            for j in range(3):
                if herm(cols[i], cols[j]) != herm(basis[i], basis[j]):
                    return False
        return det(m) == F.ONE

    cands = []
    for a, b in itertools.product(F.ALL, repeat=2):
        m = ((F.ONE, a, b), (F.ZERO, F.ONE, F.mul(((-1) % 3, 0), F.conj(a))),
             (F.ZERO, F.ZERO, F.ONE))
        if unitary(m):
            cands.append(m)
    for x, y, z in itertools.product(F.ALL, repeat=3):
        m = ((x, F.ZERO, F.ZERO), (F.ZERO, y, F.ZERO), (F.ZERO, F.ZERO, z))
        if x != F.ZERO and y != F.ZERO and z != F.ZERO and unitary(m):
            cands.append(m)
    w = ((F.ZERO, F.ZERO, F.ONE), (F.ZERO, ((-1) % 3, 0), F.ZERO), (F.ONE, F.ZERO, F.ZERO))
    assert unitary(w)
    cands.append(w)

    def normalize(v):
        for c in v:
            if c != F.ZERO:
                inv = F.inv(c)
                return tuple(F.mul(inv, a) for a in v)
        raise ValueError

    allpts = sorted({normalize(v) for v in itertools.product(F.ALL, repeat=3)
                     if any(c != F.ZERO for c in v)})
    assert len(allpts) == 91
    iso = [p for p in allpts if herm(p, p) == F.ZERO]
    assert len(iso) == 28
    idx_all = {p: i for i, p in enumerate(allpts)}
    idx_iso = {p: i for i, p in enumerate(iso)}

    def perm_all(m):
        return tuple(idx_all[normalize(matvec(m, p))] for p in allpts)

    def perm_iso(m):
        return tuple(idx_iso[normalize(matvec(m, p))] for p in iso)

    # Close the matrix group through its faithful action on all 91 points.
    gens91 = [perm_all(m) for m in cands]
    group91 = closure(gens91, 91)
    assert len(group91) == 6048, len(group91)
    # Restriction to isotropic points.
    iso_ids = [idx_all[p] for p in iso]
    pos = {a: k for k, a in enumerate(iso_ids)}

    def restrict(g):
        return tuple(pos[g[a]] for a in iso_ids)

    group = {restrict(g): g for g in group91}
    assert len(group) == 6048
    gens = small_generating_set(set(group.keys()), 28)

    e1 = normalize(basis[0])
    h1 = [r for r, g in group.items() if g[idx_all[e1]] == idx_all[e1]]
    # Orthonormal frame containing e2.
    e2 = normalize(basis[1])
    perp = [p for p in allpts if herm(p, e2) == F.ZERO and herm(p, p) != F.ZERO]
    frame = None
    for p, q in itertools.combinations(perp, 2):
        if herm(p, q) == F.ZERO:
            frame = frozenset(idx_all[x] for x in (e2, p, q))
            break
    h2 = [r for r, g in group.items() if frozenset(g[x] for x in frame) == frame]
    assert len(h1) == 216 and len(h2) == 96, (len(h1), len(h2))
    subs = [
        sub_entry("3^(1+2):8", small_generating_set(h1, 28), 216,
                  "stabilizer of the isotropic point <e1>"),
        sub_entry("4^2:S3", small_generating_set(h2, 28), 96,
                  "stabilizer of an orthonormal frame of non-isotropic points containing <e2>"),
    ]
    return entry("U(3,3)", 28, gens, 6048,
                 "SU(3,3) = PSU(3,3) acting on the 28 isotropic points of PG(2,9) "
                 "for the Hermitian form x1*y3^3 + x2*y2^3 + x3*y1^3",
                 subs)


# ------------------------------------------------------------- W(H4)

def wh4():
    phi = (1 + math.sqrt(5)) / 2
    roots = set()

    def add(v):
        roots.add(tuple(round(x, 6) + 0.0 for x in v))

    for i in range(4):
        for s in (1, -1):
            v = [0.0] * 4
            v[i] = s
            add(v)
    for signs in itertools.product((0.5, -0.5), repeat=4):
        add(signs)
    base = (0.0, 0.5, phi / 2, 1 / (2 * phi))
    even = [p for p in itertools.permutations(range(4))
            if sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j]) % 2 == 0]
    for p in even:
        for signs in itertools.product((1, -1), repeat=3):
            v = [0.0] * 4
            vals = [base[0], base[1] * signs[0], base[2] * signs[1], base[3] * signs[2]]
            for k in range(4):
                v[p[k]] = vals[k]
            add(v)
    roots = sorted(roots)
    assert len(roots) == 120, len(roots)
    index = {r: i for i, r in enumerate(roots)}

    def key(v):
        return tuple(round(x, 6) + 0.0 for x in v)

    def reflect(r):
        img = []
        for x in roots:
            d = sum(a * b for a, b in zip(x, r))
            y = [a - 2 * d * b for a, b in zip(x, r)]
            img.append(index[key(y)])
        return tuple(img)

    refl = [reflect(r) for r in roots]
    group = closure(refl, 120)
    assert len(group) == 14400, len(group)
    gens = small_generating_set(group, 120)
    r0 = 0
    neg0 = index[key([-x for x in roots[0]])]
    pair = frozenset((r0, neg0))
    h60 = [g for g in group if frozenset((g[r0], g[neg0])) == pair]
    assert len(h60) == 240
    subs = [sub_entry("Stab(root line)", small_generating_set(h60, 120), 240,
                      "stabilizer of the line through root %s" % (roots[0],))]
    h144 = wh4_torus_line_stabilizer(roots, index, key, group)
    if h144 is not None:
        subs.append(sub_entry("Stab(torus eigenline)", small_generating_set(h144, 120), 100,
                              "stabilizer of a common complex eigenline of a maximal "
                              "abelian subgroup C10 x C5"))
    return entry("W(H4)", 120, gens, 14400,
                 "Coxeter group W(H4) acting on the 120 roots (unit icosians) of H4",
                 subs)


def wh4_torus_line_stabilizer(roots, index, key, group):
    """Line stabilizer of order 100 with an order-10 eigencharacter."""
    import numpy as np
    R = np.array(roots)
    # Choose 4 linearly independent roots as a coordinate frame.
    frame = [0]
    for i in range(1, 120):
        if np.linalg.matrix_rank(R[frame + [i]]) == len(frame) + 1:
            frame.append(i)
        if len(frame) == 4:
            break
    F = R[frame]
    Finv = np.linalg.inv(F)

    def matrix(g):
        img = R[[g[i] for i in frame]]
        return (Finv @ img).T  # maps row-vector coordinates x -> x M^T

    elems = sorted(group)
    mats = [matrix(g) for g in elems]

    def order(g):
        n, x = 1, g
        ident = tuple(range(120))
        while x != ident:
            x = compose(x, g)
            n += 1
        return n

    stack = np.array(mats)
    for g, M in zip(elems, mats):
        if order(g) != 10:
            continue
        _, V = np.linalg.eig(M)
        for k in range(4):
            v = V[:, k] / np.linalg.norm(V[:, k])
            overlaps = np.abs(np.conj(v) @ (stack @ v).T)
            members = np.nonzero(np.abs(overlaps - 1) < 1e-7)[0]
            if len(members) == 100:
                return [elems[i] for i in members]
    return None


def main():
    entries = small_groups()
    entries.append(m12())
    entries.append(psp43())
    entries.append(u33())
    entries.append(wh4())
    write_catalog(entries, sys.stdout)


def write_catalog(entries, out):
    """JSON with one generator per line, so loader errors can name a line."""
    def compact(x):
        return json.dumps(x, separators=(",", ":"))

    def gens_block(gens, indent):
        pad = " " * indent
        return "[\n" + ",\n".join(pad + "  " + compact(g) for g in gens) + "\n" + pad + "]"

    out.write('{"groups": [\n')
    for i, e in enumerate(entries):
        out.write("  {\n")
        for key in ("name", "degree", "order", "provenance"):
            out.write(f"    {json.dumps(key)}: {json.dumps(e[key])},\n")
        out.write(f'    "generators": {gens_block(e["generators"], 4)},\n')
        out.write('    "subgroups": [')
        for j, sub in enumerate(e["subgroups"]):
            out.write("\n      {\n")
            for key in ("name", "order", "note"):
                out.write(f"        {json.dumps(key)}: {json.dumps(sub[key])},\n")
            out.write(f'        "generators": {gens_block(sub["generators"], 8)}\n      }}')
            out.write("," if j + 1 < len(e["subgroups"]) else "\n    ")
        out.write("]\n  }" + ("," if i + 1 < len(entries) else "") + "\n")
    out.write("]}\n")


if __name__ == "__main__":
    main()
