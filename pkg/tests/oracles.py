"""Reference computations used as test oracles.

They work in the most literal model available: ordered tensor words for
divided powers, sympy polynomial expansion for symmetric powers, and
minors for wedge powers.  None of them reuse the package's coefficient tables.
"""
from itertools import combinations, permutations, product

import sympy

x, y = sympy.symbols("x y")


def act_letter(g, letter):
    """Image of x (0) or y (1) as a {letter: coeff} dict: x -> a x + c y, y -> b x + d y."""
    (a, b), (c, d) = g
    return {0: a, 1: c} if letter == 0 else {0: b, 1: d}


def divided_generator_word_oracle(g, k, n, p=None):
    """Coefficients of g . [x^k y^(n-k)]_sym read from ordered words x^j y^(n-j)."""
    out = {}
    for pos in combinations(range(n), k):
        word = [0 if i in pos else 1 for i in range(n)]
        images = [act_letter(g, w) for w in word]
        for choice in product(*[list(im.items()) for im in images]):
            letters = tuple(l for l, _ in choice)
            coeff = 1
            for _, c in choice:
                coeff *= c
            out[letters] = out.get(letters, 0) + coeff
    res = []
    for j in range(n + 1):
        v = out.get((0,) * j + (1,) * (n - j), 0)
        res.append(v % p if p else v)
    return res


def sym_monomial_image(g, s, n):
    """Coefficients c_t of x^t y^(n-t) in g . x^s y^(n-s), via sympy."""
    (a, b), (c, d) = g
    expr = sympy.expand((a * x + c * y) ** s * (b * x + d * y) ** (n - s))
    poly = sympy.Poly(expr, x, y)
    return [int(poly.coeff_monomial(x**t * y ** (n - t))) for t in range(n + 1)]


def reduce(v, p):
    if p is None:
        return v
    return v % p


def wedge_image_oracle(columns, index, target_slots, p=None):
    """Coefficient of e_T in /\\_i (sum_t columns[s_i][t] e_t), T = target_slots (decreasing)."""
    mat = sympy.Matrix([[columns[s][t] for t in target_slots] for s in index])
    return reduce(int(mat.det()), p)


def wedge_action_oracle(g, shape_divided, slots_count, top, p=None):
    """Full matrix {(target, source): coeff} of g on /\\^slots Sym^top or /\\^slots Sym_top."""
    if shape_divided:
        cols = {s: divided_generator_word_oracle(g, s, top) for s in range(top + 1)}
    else:
        cols = {s: sym_monomial_image(g, s, top) for s in range(top + 1)}
    subsets = [tuple(sorted(c, reverse=True)) for c in combinations(range(top + 1), slots_count)]
    out = {}
    for src in subsets:
        for tgt in subsets:
            v = wedge_image_oracle(cols, src, tgt, p)
            if v:
                out[(tgt, src)] = v
    return out


def sym_of_divided_oracle(g, lam, ell, p=None):
    """g . prod_i F(lam_i) in Sym^m Sym_ell as {sorted index: coeff} via sympy product."""
    F = sympy.symbols(f"F0:{ell + 1}")
    expr = 1
    for k in lam:
        cs = divided_generator_word_oracle(g, k, ell)
        expr *= sum(c * F[j] for j, c in enumerate(cs))
    poly = sympy.Poly(sympy.expand(expr), *F)
    out = {}
    for exps, c in poly.terms():
        idx = tuple(sorted((j for j, e in enumerate(exps) for _ in range(e)), reverse=True))
        v = reduce(int(c), p)
        if v:
            out[idx] = v
    return out


def divided_of_sym_oracle(g, lam, ell, p=None):
    """g . (sum over distinct arrangements of lam of ordered tensors of monomials) in Sym_m Sym^ell.

    The coefficient of basis mu is the coefficient of the decreasing ordered word mu.
    """
    cols = {s: sym_monomial_image(g, s, ell) for s in range(ell + 1)}
    out = {}
    for arr in set(permutations(lam)):
        for choice in product(*[list(enumerate(cols[s])) for s in arr]):
            word = tuple(t for t, _ in choice)
            if any(a < b for a, b in zip(word, word[1:])):
                continue
            c = 1
            for _, v in choice:
                c *= v
            out[word] = out.get(word, 0) + c
    return {k: reduce(v, p) for k, v in out.items() if reduce(v, p)}


def determinant_oracle(ell):
    """det of a symbolic ell x ell matrix as {exponent tuple over x11..x_ll: coeff}."""
    syms = sympy.symbols(" ".join(f"x{i}{j}" for i in range(1, ell + 1) for j in range(1, ell + 1)))
    if ell == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    M = sympy.Matrix(ell, ell, list(syms))
    poly = sympy.Poly(M.det(), *syms)
    return {tuple(e) + (0,) * (ell * ell): int(c) for e, c in poly.terms()}


def phi_mixed_oracle(ell, k):
    """M_ell(k)(nu I, Diag(mu)) via symbolic determinants of row-mixed matrices."""
    nu = sympy.Symbol("nu")
    mus = sympy.symbols(f"mu1:{ell + 1}")
    X = sympy.eye(ell) * nu
    Y = sympy.diag(*mus)
    total = 0
    for rows in combinations(range(ell), k):
        M = sympy.Matrix([list(X.row(i)) if i in rows else list(Y.row(i)) for i in range(ell)])
        total += M.det()
    return sympy.Poly(sympy.expand(total), nu, *mus)
