"""Slow, independent reference implementations used as test oracles.

Nothing here imports the package's linear algebra or coboundary code.
Everything is plain loops over basis tuples with sympy rationals.
"""

from itertools import product

import sympy as sp


def to_sympy(arr):
    return sp.Array([sp.Rational(int(x.numerator), int(x.denominator)) if hasattr(x, "denominator")
                     else sp.Integer(int(x)) for x in arr.ravel()], arr.shape)


def naive_rank(rows):
    if not rows:
        return 0
    return sp.Matrix(rows).rank()


def minor_rank(M):
    """Rank as the largest size of a nonvanishing minor (tiny matrices only)."""
    from itertools import combinations

    M = sp.Matrix(M)
    r, c = M.shape
    for k in range(min(r, c), 0, -1):
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                if M.extract(list(rows), list(cols)).det() != 0:
                    return k
    return 0


def cochain_constraints(d, m, n, alpha, A):
    """Rows of the full linear system cutting out n-cochains (unknowns ordered row-major)."""
    def var(idx, v):
        pos = 0
        for i in idx:
            pos = pos * d + i
        return pos * m + v

    N = m * d ** n
    rows = []
    # A f(e_I) = f(alpha e_I1, ..., alpha e_In)
    for idx in product(range(d), repeat=n):
        for v in range(m):
            row = [0] * N
            for w in range(m):
                row[var(idx, w)] += A[v, w]
            for jdx in product(range(d), repeat=n):
                coeff = 1
                for i, j in zip(idx, jdx):
                    coeff *= alpha[j, i]
                if coeff:
                    row[var(jdx, v)] -= coeff
            rows.append(row)
    if n >= 3:
        s, t = n - 3, n - 2
        for idx in product(range(d), repeat=n):
            for v in range(m):
                row = [0] * N
                if idx[s] == idx[t]:
                    row[var(idx, v)] = 1
                else:
                    sw = list(idx)
                    sw[s], sw[t] = sw[t], sw[s]
                    row[var(idx, v)] += 1
                    row[var(tuple(sw), v)] += 1
                rows.append(row)
                row = [0] * N
                head = idx[: n - 3]
                x, y, z = idx[n - 3:]
                for tail in ((x, y, z), (y, z, x), (z, x, y)):
                    row[var(head + tail, v)] += 1
                rows.append(row)
    return rows


def naive_cochain_basis(d, m, n, alpha, A):
    """Nullspace of the full constraint system, one sympy column vector per element."""
    M = sp.Matrix(cochain_constraints(d, m, n, alpha, A))
    return M.nullspace()


class Yamaguti:
    """Lie triple system cohomology coded from scratch with explicit loops.

    ``c[i][j][k][l]`` are the structure constants and ``theta[a][b]`` the
    module matrices, as nested lists of exact numbers.  With ``alpha`` left
    out the twist is the identity and this is the classical complex; with
    ``alpha`` given (columns are images of basis vectors) the operator
    follows the twisted formula term by term.
    """

    def __init__(self, c, theta, d, m, alpha=None):
        self.c, self.theta, self.d, self.m = c, theta, d, m
        self.alpha = alpha

    def twist(self, x, power=1):
        if self.alpha is None:
            return x
        for _ in range(power):
            x = [sum(self.alpha[l][i] * x[i] for i in range(self.d)) for l in range(self.d)]
        return x

    def bracket(self, x, y, z):
        d = self.d
        out = [0] * d
        for i, j, k in product(range(d), repeat=3):
            coeff = x[i] * y[j] * z[k]
            if coeff:
                for l in range(d):
                    out[l] += coeff * self.c[i][j][k][l]
        return out

    def act(self, a, b, v, derivation=False):
        # theta(a, b) v, or D(a, b) v = theta(b, a) v - theta(a, b) v
        d, m = self.d, self.m
        out = [0] * m
        for i, j in product(range(d), repeat=2):
            coeff = a[i] * b[j]
            if not coeff:
                continue
            for r in range(m):
                for s in range(m):
                    t = self.theta[j][i][r][s] - self.theta[i][j][r][s] if derivation else self.theta[i][j][r][s]
                    out[r] += coeff * t * v[s]
        return out

    def evaluate(self, f, args):
        """f on arbitrary vectors by multilinear expansion; f maps index tuples to m-lists."""
        m = self.m
        out = [0] * m
        supports = [[(i, x) for i, x in enumerate(a) if x] for a in args]
        for combo in product(*supports):
            coeff = 1
            idx = []
            for i, x in combo:
                coeff *= x
                idx.append(i)
            val = f[tuple(idx)]
            for r in range(m):
                out[r] += coeff * val[r]
        return out

    def unit(self, i):
        v = [0] * self.d
        v[i] = 1
        return v

    def coboundary(self, f, n):
        """delta f for an n-cochain f given as {index tuple: m-list}; returns the same for degree n+2."""
        d, m = self.d, self.m
        passive = n % 2 == 0
        k_top = n // 2 if passive else (n + 1) // 2
        power = n // 2 if passive else (n - 1) // 2
        out = {}
        for idx in product(range(d), repeat=n + 2):
            vecs = [self.unit(i) for i in idx]
            ys, xs = (vecs[:1], vecs[1:]) if passive else ([], vecs)
            N = 2 * k_top + 1
            x = lambda i: xs[i - 1]  # noqa: E731
            tx = lambda i: self.twist(xs[i - 1], power)  # noqa: E731
            total = [0] * m

            def add(sign, vec):
                for r in range(m):
                    total[r] += sign * vec[r]

            v = self.evaluate(f, ys + [x(i) for i in range(1, N - 1)])
            add(1, self.act(tx(N - 1), tx(N), v))
            v = self.evaluate(f, ys + [x(i) for i in range(1, N - 2)] + [x(N - 1)])
            add(-1, self.act(tx(N - 2), tx(N), v))
            for k in range(1, k_top + 1):
                rest = [x(i) for i in range(1, N + 1) if i not in (2 * k - 1, 2 * k)]
                v = self.evaluate(f, ys + rest)
                add((-1) ** (k_top + k), self.act(tx(2 * k - 1), tx(2 * k), v, derivation=True))
                for j in range(2 * k + 1, N + 1):
                    args = [self.bracket(x(2 * k - 1), x(2 * k), x(j)) if i == j else self.twist(x(i))
                            for i in range(1, N + 1) if i not in (2 * k - 1, 2 * k)]
                    add((-1) ** (k_top + k + 1), self.evaluate(f, [self.twist(y) for y in ys] + args))
            out[idx] = total
        return out

    def cohomology_dim(self, n, bases):
        """dim H^n from naive cochain bases ``bases[k]`` (lists of flat sympy vectors)."""
        def as_map(vec, k):
            f = {}
            for pos, idx in enumerate(product(range(self.d), repeat=k)):
                f[idx] = [vec[pos * self.m + r] for r in range(self.m)]
            return f

        def flat(g):
            return [x for idx in sorted(g) for x in g[idx]]

        C = bases[n]
        images = [flat(self.coboundary(as_map(v, n), n)) for v in C]
        rank_delta = naive_rank([list(r) for r in zip(*images)]) if images else 0
        z = len(C) - rank_delta
        if n < 3:
            return z
        lower = [flat(self.coboundary(as_map(v, n - 2), n - 2)) for v in bases[n - 2]]
        return z - naive_rank(lower)


def naive_axioms(c, a, p=0):
    """Basis-level Hom-LTS axioms with explicit loops; ``c`` and ``a`` are nested lists.

    ``p`` is the characteristic (0 for the rationals).
    """
    d = len(a)

    def nonzero(v):
        return any(x % p for x in v) if p else any(v)

    def br(x, y, z):
        out = [0] * d
        for i, j, k in product(range(d), repeat=3):
            coeff = x[i] * y[j] * z[k]
            if coeff:
                for l in range(d):
                    out[l] += coeff * c[i][j][k][l]
        return out

    def tw(x):
        return [sum(a[l][i] * x[i] for i in range(d)) for l in range(d)]

    def e(i):
        return [1 if t == i else 0 for t in range(d)]

    def add(*vs):
        return [sum(col) for col in zip(*vs)]

    def neg(v):
        return [-x for x in v]

    status = {"alternating": True, "ternary-cyclic": True, "hom-nambu": True, "multiplicativity": True}
    basis = [e(i) for i in range(d)]
    for x, y, z in product(basis, repeat=3):
        if nonzero(add(br(x, y, z), br(y, x, z))):
            status["alternating"] = False
        if nonzero(add(br(x, y, z), br(y, z, x), br(z, x, y))):
            status["ternary-cyclic"] = False
        if nonzero(add(tw(br(x, y, z)), neg(br(tw(x), tw(y), tw(z))))):
            status["multiplicativity"] = False
    for u, v, x, y, z in product(basis, repeat=5):
        lhs = br(tw(u), tw(v), br(x, y, z))
        rhs = add(br(br(u, v, x), tw(y), tw(z)), br(tw(x), br(u, v, y), tw(z)), br(tw(x), tw(y), br(u, v, z)))
        if nonzero(add(lhs, neg(rhs))):
            status["hom-nambu"] = False
    return status


def naive_circ(f, g, alpha, p=0):
    """The five-linear pairing of two trilinear maps, by explicit loops over basis tuples."""
    d = len(alpha)

    def ev(h, x, y, z):
        out = [0] * d
        for i, j, k in product(range(d), repeat=3):
            coeff = x[i] * y[j] * z[k]
            if coeff:
                for l in range(d):
                    out[l] += coeff * h[i][j][k][l]
        return out

    def tw(x):
        return [sum(alpha[l][i] * x[i] for i in range(d)) for l in range(d)]

    e = [[1 if t == i else 0 for t in range(d)] for i in range(d)]
    out = {}
    for idx in product(range(d), repeat=5):
        u, v, x, y, z = (e[i] for i in idx)
        terms = [
            ev(f, ev(g, u, v, x), tw(y), tw(z)),
            ev(f, tw(x), ev(g, u, v, y), tw(z)),
            ev(f, tw(x), tw(y), ev(g, u, v, z)),
        ]
        neg = ev(f, tw(u), tw(v), ev(g, x, y, z))
        vec = [a + b + c - n for a, b, c, n in zip(*terms, neg)]
        out[idx] = [w % p for w in vec] if p else vec
    return out
