"""Independent sympy oracles.

Forms are dicts {sorted index tuple: coefficient}; a differential is given by
its values on generators as dicts {(i, j): c}.  Nothing here touches the
package, so the oracles can check it.
"""

import itertools

import sympy

from _support import permutation_sign


def o_wedge(a, b):
    out = {}
    for (ma, ca), (mb, cb) in itertools.product(a.items(), b.items()):
        s = permutation_sign(ma + mb)
        if s:
            key = tuple(sorted(ma + mb))
            out[key] = out.get(key, 0) + s * ca * cb
    return {k: v for k, v in out.items() if v}


def o_d(gens, a):
    out = {}
    for mono, c in a.items():
        for pos, i in enumerate(mono):
            de = {tuple(k): v for k, v in gens.get(i, {}).items()}
            if not de:
                continue
            left = {mono[:pos]: sympy.Integer((-1) ** pos) * c}
            term = o_wedge(o_wedge(left, de), {mono[pos + 1:]: 1})
            for k, v in term.items():
                out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def basis(n, k):
    return list(itertools.combinations(range(1, n + 1), k))


def column(f, monos):
    return sympy.Matrix([f.get(m, 0) for m in monos])


def d_matrix(gens, n, k):
    src, tgt = basis(n, k), basis(n, k + 1)
    cols = [column(o_d(gens, {m: sympy.Integer(1)}), tgt) for m in src]
    return sympy.Matrix.hstack(*cols) if cols else sympy.zeros(len(tgt), 0)


def all_primitives(gens, n, k, z):
    """(particular, null basis) for d(x) = z over the full degree-k cochains."""
    A = d_matrix(gens, n, k)
    sol, params = A.gauss_jordan_solve(column(z, basis(n, k + 1)))
    x0 = sol.subs({p: 0 for p in params})
    null = A.nullspace()
    to_form = lambda v: {m: v[i] for i, m in enumerate(basis(n, k)) if v[i]}
    return to_form(x0), [to_form(v) for v in null]


def oracle_massey(gens, n, a1, a2, a3, p1, p2, p3, expected):
    """Massey product over every primitive pair (sigma, tau), as an affine family.

    Returns (nonvanishing, zero indeterminacy, value - expected is exact).
    """
    sgn = sympy.Integer(1 if (p1 + 1) % 2 == 0 else -1)
    s0, s_null = all_primitives(gens, n, p1 + p2 - 1, o_wedge(a1, a2))
    t0, t_null = all_primitives(gens, n, p2 + p3 - 1, o_wedge(a2, a3))
    k = p1 + p2 + p3 - 1
    monos = basis(n, k)

    def mval(sigma, tau):
        a = o_wedge(a1, tau)
        b = o_wedge(sigma, a3)
        return {m: a.get(m, 0) + sgn * b.get(m, 0) for m in set(a) | set(b)}

    v0 = column(mval(s0, t0), monos)
    moves = [column(mval(s, {}), monos) for s in s_null] + [column(mval({}, t), monos) for t in t_null]
    B = d_matrix(gens, n, k - 1)
    rB = B.rank()
    span = sympy.Matrix.hstack(B, *moves) if moves else B
    nonvanishing = sympy.Matrix.hstack(span, v0).rank() > span.rank()
    zero_indet = span.rank() == rB
    diff = v0 - column(expected, monos)
    matches = sympy.Matrix.hstack(B, diff).rank() == rB
    return nonvanishing, zero_indet, matches




def h7_oracle():
    """Betti numbers of h7 and the dimensions fixed by the quarter turn, per degree."""
    n = 6
    gens = {4: {(1, 2): 1}, 5: {(1, 3): 1}, 6: {(2, 3): 1}}
    img = {1: {(2,): -1}, 2: {(1,): 1}, 3: {(3,): 1}, 4: {(4,): 1}, 5: {(6,): -1}, 6: {(5,): 1}}

    def phi(f):
        out = {}
        for mono, c in f.items():
            t = {(): c}
            for i in mono:
                t = o_wedge(t, img[i])
            for k, v in t.items():
                out[k] = out.get(k, 0) + v
        return out

    betti, fixed = [], []
    for k in range(n + 1):
        src = basis(n, k)
        eye = sympy.eye(len(src))
        P = sympy.Matrix.hstack(*[column(phi({m: 1}), src) for m in src])
        D = d_matrix(gens, n, k) if k < n else sympy.zeros(0, len(src))
        Dm = d_matrix(gens, n, k - 1) if k else sympy.zeros(len(src), 0)
        Z = sympy.Matrix.hstack(*D.nullspace()) if D.rows else eye
        rB = Dm.rank() if Dm.cols else 0
        betti.append(Z.rank() - rB)
        # closed z with (P - 1) z exact, modulo exact forms
        A = sympy.Matrix.hstack((P - eye) * Z, -Dm) if Dm.cols else (P - eye) * Z
        K = A.nullspace()
        if K:
            F = sympy.Matrix.hstack(*[Z * v[: Z.cols, :] for v in K])
            fixed.append((sympy.Matrix.hstack(F, Dm).rank() if Dm.cols else F.rank()) - rB)
        else:
            fixed.append(0)
    return tuple(betti), tuple(fixed)
