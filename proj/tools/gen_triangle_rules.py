#!/usr/bin/env python3
"""Generate symmetric positive-weight quadrature rules for the reference triangle.

Produces src/triangle_rules_data.inc, consumed by src/quadrature.cpp.

Rules are stored as symmetry orbits in barycentric coordinates with weights
normalized to sum to 1 (the physical weight is w * |T|):
  kind 0: centroid (1/3, 1/3, 1/3), 1 point
  kind 1: (a, a, 1-2a) and permutations, 3 points
  kind 2: (a, b, 1-a-b) and permutations, 6 points

Degrees 1, 2 and 5 have exact closed forms. Degrees 4, 6 and 8 are solved
from the moment equations: with e2, e3 the elementary symmetric polynomials
of the barycentric coordinates, the functionals p = e2^i e3^j with
2i + 3j <= degree form a basis of the symmetric polynomials of that degree
on the plane b1+b2+b3 = 1, and their count matches the orbit parameter count
(4 for degree 4, 7 for degree 6, 10 for degree 8), giving a square Newton
system. Double-precision literature values seed the iteration; the solution
is polished to 40 significant digits and verified against exact rational
monomial moments (integral of x^p y^q over the unit right triangle equals
p! q! / (p+q+2)!).
"""

import sys
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 60


# ---------------------------------------------------------------------------
# Orbit machinery


def orbit_points(kind, a, b):
    """Barycentric triples of one orbit."""
    if kind == 0:
        third = mp.mpf(1) / 3
        return [(third, third, third)]
    if kind == 1:
        c = 1 - 2 * a
        return [(a, a, c), (a, c, a), (c, a, a)]
    c = 1 - a - b
    return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


def orbit_size(kind):
    return {0: 1, 1: 3, 2: 6}[kind]


def apply_rule(orbits, f):
    """Sum of w * f(b1,b2,b3) over all points; weights normalized to sum 1."""
    total = mp.mpf(0)
    for kind, a, b, w in orbits:
        for bary in orbit_points(kind, a, b):
            total += w * f(*bary)
    return total


# Moments of e2^i e3^j over the reference triangle, divided by |T| = 1/2,
# computed exactly: expand in monomials of (x, y) with b = (1-x-y, x, y).
def exact_symmetric_moment(i, j):
    # polynomial as dict {(p, q): Fraction}
    one = {(0, 0): Fraction(1)}

    def mul(P, Q):
        R = {}
        for (p1, q1), c1 in P.items():
            for (p2, q2), c2 in Q.items():
                key = (p1 + p2, q1 + q2)
                R[key] = R.get(key, Fraction(0)) + c1 * c2
        return R

    def add(P, Q):
        R = dict(P)
        for k, c in Q.items():
            R[k] = R.get(k, Fraction(0)) + c
        return R

    x = {(1, 0): Fraction(1)}
    y = {(0, 1): Fraction(1)}
    b1 = add(add(one, {(1, 0): Fraction(-1)}), {(0, 1): Fraction(-1)})
    e2 = add(add(mul(b1, x), mul(b1, y)), mul(x, y))
    e3 = mul(mul(b1, x), y)

    P = one
    for _ in range(i):
        P = mul(P, e2)
    for _ in range(j):
        P = mul(P, e3)

    # integral of x^p y^q over T is p! q! / (p+q+2)!; normalize by |T| = 1/2
    import math

    total = Fraction(0)
    for (p, q), c in P.items():
        total += c * Fraction(math.factorial(p) * math.factorial(q), math.factorial(p + q + 2))
    return total * 2


def symmetric_basis(degree):
    pairs = []
    for j in range(0, degree // 3 + 1):
        for i in range(0, (degree - 3 * j) // 2 + 1):
            pairs.append((i, j))
    return pairs


def e2e3(b1, b2, b3):
    return b1 * b2 + b1 * b3 + b2 * b3, b1 * b2 * b3


def solve_rule(degree, structure, seed):
    """structure: list of orbit kinds; seed: flat parameter list in the same
    order as the unknown vector (w for kind 0; a, w for kind 1; a, b, w for
    kind 2)."""
    pairs = symmetric_basis(degree)
    targets = [mp.mpf(exact_symmetric_moment(i, j).numerator) / exact_symmetric_moment(i, j).denominator
               for (i, j) in pairs]
    assert len(pairs) == len(seed), (degree, len(pairs), len(seed))

    def unpack(u):
        orbits = []
        idx = 0
        for kind in structure:
            if kind == 0:
                orbits.append((0, mp.mpf(0), mp.mpf(0), u[idx]))
                idx += 1
            elif kind == 1:
                orbits.append((1, u[idx], mp.mpf(0), u[idx + 1]))
                idx += 2
            else:
                orbits.append((2, u[idx], u[idx + 1], u[idx + 2]))
                idx += 3
        return orbits

    def residual(*u):
        orbits = unpack(list(u))
        out = []
        for (i, j), t in zip(pairs, targets):
            def f(b1, b2, b3, i=i, j=j):
                s2, s3 = e2e3(b1, b2, b3)
                return s2 ** i * s3 ** j
            out.append(apply_rule(orbits, f) - t)
        return out

    sol = mp.findroot(residual, [mp.mpf(s) for s in seed], tol=mp.mpf(10) ** (-50), maxsteps=200)
    return unpack([sol[k] for k in range(len(seed))])


def verify_rule(degree, orbits):
    import math

    worst = mp.mpf(0)
    for p in range(0, degree + 1):
        for q in range(0, degree + 1 - p):
            exact = mp.mpf(math.factorial(p) * math.factorial(q)) / math.factorial(p + q + 2)
            # rule value: |T| * sum w * x^p y^q with (x, y) = (b2, b3)
            got = mp.mpf('0.5') * apply_rule(orbits, lambda b1, b2, b3: b2 ** p * b3 ** q)
            err = abs(got - exact) / abs(exact)
            worst = max(worst, err)
    wsum = apply_rule(orbits, lambda *b: mp.mpf(1))
    for kind, a, b, w in orbits:
        assert w > 0, f"degree {degree}: nonpositive weight {w}"
        for bary in orbit_points(kind, a, b):
            assert all(c > 0 for c in bary), f"degree {degree}: point outside triangle {bary}"
    return worst, abs(wsum - 1)


def main():
    third = mp.mpf(1) / 3
    s15 = mp.sqrt(15)

    rules = {}

    rules[1] = [(0, mp.mpf(0), mp.mpf(0), mp.mpf(1))]
    rules[2] = [(1, mp.mpf(1) / 6, mp.mpf(0), third)]
    rules[5] = [
        (0, mp.mpf(0), mp.mpf(0), mp.mpf(9) / 40),
        (1, (6 + s15) / 21, mp.mpf(0), (155 + s15) / 1200),
        (1, (6 - s15) / 21, mp.mpf(0), (155 - s15) / 1200),
    ]

    rules[4] = solve_rule(
        4,
        [1, 1],
        [0.445948490915965, 0.223381589678011, 0.091576213509771, 0.109951743655322],
    )
    rules[6] = solve_rule(
        6,
        [1, 1, 2],
        [0.249286745170910, 0.116786275726379,
         0.063089014491502, 0.050844906370207,
         0.310352451033785, 0.053145049844816, 0.082851075618374],
    )
    rules[8] = solve_rule(
        8,
        [0, 1, 1, 1, 2],
        [0.144315607677787,
         0.459292588292723, 0.095091634413245,
         0.170569307751760, 0.103217370534718,
         0.050547228317031, 0.032458497623198,
         0.263112829634638, 0.728492392955404, 0.027230314174435],
    )

    lines = []
    lines.append("// Generated by tools/gen_triangle_rules.py; do not edit by hand.")
    lines.append("// Symmetric quadrature orbits on the reference triangle, barycentric,")
    lines.append("// weights normalized to sum to 1 (physical weight = w * element area).")
    lines.append("// kind 0: centroid; kind 1: (a,a,1-2a) x3; kind 2: (a,b,1-a-b) x6.")
    lines.append("")
    ok = True
    for degree in sorted(rules):
        orbits = rules[degree]
        worst, wsum_err = verify_rule(degree, orbits)
        npts = sum(orbit_size(k) for k, *_ in orbits)
        status = "ok" if worst < mp.mpf(10) ** (-40) else "FAIL"
        ok &= status == "ok"
        print(f"degree {degree}: {npts} points, worst monomial error {mp.nstr(worst, 3)}, "
              f"weight-sum error {mp.nstr(wsum_err, 3)} [{status}]")
        lines.append(f"static constexpr TriangleOrbit kTriOrbitsDeg{degree}[] = {{")
        for kind, a, b, w in orbits:
            sa = mp.nstr(a, 25) if kind != 0 else "0.0"
            sb = mp.nstr(b, 25) if kind == 2 else "0.0"
            sw = mp.nstr(w, 25)
            lines.append(f"    {{{kind}, {sa}, {sb}, {sw}}},")
        lines.append("};")
    lines.append("")
    lines.append("static constexpr TriangleRuleEntry kTriangleRuleTable[] = {")
    for degree in sorted(rules):
        npts = sum(orbit_size(k) for k, *_ in rules[degree])
        norb = len(rules[degree])
        lines.append(f"    {{{degree}, kTriOrbitsDeg{degree}, {norb}}},")
    lines.append("};")
    lines.append("")

    out = sys.argv[1] if len(sys.argv) > 1 else "src/triangle_rules_data.inc"
    with open(out, "w") as fh:
        fh.write("\n".join(lines))
    print(f"wrote {out}")
    if not ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
