"""Exact sparse multivariate polynomial arithmetic over Z, Q or F_p.

Terms are stored as {exponent tuple: coefficient}; zero coefficients are
never stored. Lexicographic order in the declared variable order.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import log

INT = "int"
RAT = "rat"
PRIME_FIELD = "gf"


class DomainMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CoeffDomain:
    tag: str
    p: int | None = None

    def __post_init__(self):
        if self.tag == PRIME_FIELD:
            if self.p is None or self.p < 2 or not _is_prime(self.p):
                raise ValueError("p must be prime for a prime field")
        elif self.p is not None:
            raise ValueError("p only allowed for prime fields")

    def coerce(self, c):
        if self.tag == INT:
            f = Fraction(c)
            if f.denominator != 1:
                raise ValueError("non-integral coefficient over Z")
            return int(f)
        if self.tag == RAT:
            return Fraction(c)
        return int(c) % self.p


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


ZZ = CoeffDomain(INT)
QQ = CoeffDomain(RAT)


def GF(p):
    return CoeffDomain(PRIME_FIELD, p)


class MultiPoly:
    __slots__ = ("domain", "variables", "terms")

    def __init__(self, domain, variables, terms=None):
        self.domain = domain
        self.variables = tuple(variables)
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(self.variables):
                raise ValueError("exponent vector length mismatch")
            c = domain.coerce(c)
            if c != 0:
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, domain, variables):
        return cls(domain, variables)

    @classmethod
    def const(cls, domain, variables, c):
        return cls(domain, variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, domain, variables, name):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(domain, variables, {tuple(e): 1})

    # -- ring structure ----------------------------------------------------

    def _compat(self, other):
        if isinstance(other, MultiPoly):
            if other.domain != self.domain or other.variables != self.variables:
                raise DomainMismatch("incompatible polynomial rings")
            return other
        return MultiPoly.const(self.domain, self.variables, other)

    def __add__(self, other):
        other = self._compat(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.domain, self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.domain, self.variables,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._compat(other))

    def __rsub__(self, other):
        return self._compat(other) - self

    def __mul__(self, other):
        other = self._compat(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.domain, self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MultiPoly.const(self.domain, self.variables, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            other = self._compat(other)
        return (self.domain == other.domain
                and self.variables == other.variables
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.domain, self.variables,
                     tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    # -- calculus and substitution ----------------------------------------

    def partial(self, name):
        idx = self.variables.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[idx] == 0:
                continue
            ne = list(e)
            ne[idx] -= 1
            terms[tuple(ne)] = terms.get(tuple(ne), 0) + c * e[idx]
        return MultiPoly(self.domain, self.variables, terms)

    def evaluate(self, point):
        """Substitute scalars for all variables; point is a sequence."""
        if len(point) != len(self.variables):
            raise ValueError("point dimension mismatch")
        total = self.domain.coerce(0)
        for e, c in self.terms.items():
            val = c
            for x, k in zip(point, e):
                if k:
                    val = val * self.domain.coerce(x) ** k
            total = total + val
        return self.domain.coerce(total)

    def subs(self, mapping):
        """Substitute polynomials (or scalars) for some variables."""
        out = MultiPoly.zero(self.domain, self.variables)
        cache = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(self.domain, self.variables, c)
            for name, k in zip(self.variables, e):
                if k == 0:
                    continue
                if name in mapping:
                    key = (name, k)
                    if key not in cache:
                        rep = mapping[name]
                        if not isinstance(rep, MultiPoly):
                            rep = MultiPoly.const(self.domain, self.variables, rep)
                        cache[key] = rep ** k
                    term = term * cache[key]
                else:
                    term = term * MultiPoly.var(
                        self.domain, self.variables, name) ** k
            out = out + term
        return out

    def extend_vars(self, variables):
        """Reinterpret in a larger ring containing the old variables."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.variables]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in zip(idx, e):
                ne[i] = k
            terms[tuple(ne)] = c
        return MultiPoly(self.domain, variables, terms)

    # -- printing / parsing ------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(self.variables, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            coeff = str(c)
            if factors and c == 1:
                coeff = ""
            elif factors and c == -1:
                coeff = "-"
            body = "*".join(factors)
            if coeff and body and coeff != "-":
                parts.append(f"{coeff}*{body}")
            else:
                parts.append(coeff + body if body else coeff)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


_TOKEN = re.compile(r"\s*([a-z][a-z0-9]*|\d+|[-+*^()])")


def parse_poly(text, variables, domain=ZZ):
    """Parse `3*x1^2*t - x2` style syntax into a MultiPoly."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token at: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)
    it = iter(range(len(tokens)))
    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def take():
        t = tokens[state["i"]]
        state["i"] += 1
        return t

    def atom():
        t = take()
        if t == "(":
            e = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return e
        if t is None:
            raise ValueError("unexpected end of input")
        if t.isdigit():
            base = MultiPoly.const(domain, variables, int(t))
        else:
            if t not in variables:
                raise ValueError(f"unknown variable {t!r}")
            base = MultiPoly.var(domain, variables, t)
        if peek() == "^":
            take()
            n = take()
            if n is None or not n.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(n)
        return base

    def product():
        out = atom()
        while peek() == "*":
            take()
            out = out * atom()
        return out

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        out = product() * sign
        while peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
            out = out + product() * sign
        return out

    result = expr()
    if peek() is not None:
        raise ValueError("trailing input")
    return result


def divide_exact(f, g):
    """Quotient q with f = q*g, or None when g does not divide f exactly."""
    if g.is_zero():
        return MultiPoly.zero(f.domain, f.variables) if f.is_zero() else None
    q_terms = {}
    rem = f
    lt_e, lt_c = max(g.terms.items(), key=lambda t: t[0])
    while not rem.is_zero():
        re_, rc = max(rem.terms.items(), key=lambda t: t[0])
        diff = tuple(a - b for a, b in zip(re_, lt_e))
        if any(d < 0 for d in diff):
            return None
        if f.domain.tag == INT:
            if rc % lt_c != 0:
                return None
            qc = rc // lt_c
        elif f.domain.tag == RAT:
            qc = Fraction(rc) / lt_c
        else:
            qc = rc * pow(lt_c, -1, f.domain.p)
        q_terms[diff] = q_terms.get(diff, 0) + qc
        rem = rem - MultiPoly(f.domain, f.variables, {diff: qc}) * g
    return MultiPoly(f.domain, f.variables, q_terms)


# -- polynomial matrices ---------------------------------------------------


@dataclass
class PolyMatrix:
    rows: int
    cols: int
    entries: list  # list of lists of MultiPoly

    def __post_init__(self):
        if len(self.entries) != self.rows or any(
                len(r) != self.cols for r in self.entries):
            raise ValueError("inconsistent dimensions")
        ref = self.entries[0][0] if self.rows and self.cols else None
        if ref is not None:
            for row in self.entries:
                for e in row:
                    if e.domain != ref.domain or e.variables != ref.variables:
                        raise DomainMismatch("mixed polynomial rings in matrix")

    @classmethod
    def from_rows(cls, entries):
        return cls(len(entries), len(entries[0]) if entries else 0,
                   [list(r) for r in entries])

    def drop_col(self, j):
        return PolyMatrix.from_rows(
            [[e for k, e in enumerate(row) if k != j] for row in self.entries])

    def column(self, j):
        return [row[j] for row in self.entries]

    def mul_vec(self, vec):
        return [sum((e * v for e, v in zip(row, vec)),
                    start=row[0] * 0) for row in self.entries]

    def matmul(self, other):
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.entries[i][0] * other.entries[0][j]
                for k in range(1, self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix.from_rows(out)


def determinant(m, method="auto"):
    """Determinant of a square PolyMatrix.

    Cofactor expansion with memoized minors up to 4x4, fraction-free
    elimination (exact polynomial division) above.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        raise ValueError("empty matrix")
    ring_zero = m.entries[0][0] * 0
    if method == "bareiss" or (method == "auto" and n > 4):
        return _det_bareiss(m)
    memo = {}

    def minor(rows_left, cols):
        # rows_left: tuple of row indices, cols: frozenset of column indices
        key = (rows_left, cols)
        if key in memo:
            return memo[key]
        i = rows_left[0]
        if len(rows_left) == 1:
            (j,) = cols
            return m.entries[i][j]
        acc = ring_zero
        for s, j in enumerate(sorted(cols)):
            e = m.entries[i][j]
            if e.is_zero():
                continue
            sub = minor(rows_left[1:], cols - {j})
            acc = acc + e * sub * ((-1) ** s)
        memo[key] = acc
        return acc

    return minor(tuple(range(n)), frozenset(range(n)))


def _det_bareiss(m):
    n = m.rows
    a = [row[:] for row in m.entries]
    one = MultiPoly.const(a[0][0].domain, a[0][0].variables, 1)
    sign = 1
    prev = one
    for c in range(n):
        piv = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
        if piv is None:
            return a[0][0] * 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                num = a[i][j] * a[c][c] - a[i][c] * a[c][j]
                q = divide_exact(num, prev)
                assert q is not None, "Bareiss division must be exact"
                a[i][j] = q
            a[i][c] = a[i][c] * 0
        prev = a[c][c]
    return a[n - 1][n - 1] * sign


def adjugate(m):
    """Transpose cofactor matrix: adjugate(M) . M = det(M) . I exactly."""
    if m.rows != m.cols:
        raise ValueError("adjugate of a non-square matrix")
    n = m.rows
    if n == 1:
        one = MultiPoly.const(m.entries[0][0].domain,
                              m.entries[0][0].variables, 1)
        return PolyMatrix.from_rows([[one]])
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = PolyMatrix.from_rows(
                [[m.entries[r][c] for c in range(n) if c != j]
                 for r in range(n) if r != i])
            out[j][i] = determinant(sub) * ((-1) ** (i + j))
    return PolyMatrix.from_rows(out)


def poly_identity(n, domain, variables):
    one = MultiPoly.const(domain, variables, 1)
    zero = MultiPoly.zero(domain, variables)
    return PolyMatrix.from_rows(
        [[one if i == j else zero for j in range(n)] for i in range(n)])


def derive_adjoint_relation(h, f):
    """Residual of the adjugate identity applied to the last column.

    h is (n-1) x n, f a length-n vector. Returns
    det(H_n) f' + f_n adj(H_n) h_col  -  adj(H_n) (H_n f' + f_n h_col),
    which is identically zero for every input.
    """
    n = h.cols
    if h.rows != n - 1 or len(f) != n:
        raise ValueError("dimension mismatch")
    hn = h.drop_col(n - 1)
    hcol = h.column(n - 1)
    adj = adjugate(hn)
    det = determinant(hn)
    fprime, fn = f[:-1], f[-1]
    left = [det * fi + fn * c for fi, c in zip(fprime, adj.mul_vec(hcol))]
    inner = [hi + fn * hc for hi, hc in zip(hn.mul_vec(fprime), hcol)]
    right = adj.mul_vec(inner)
    return [a - b for a, b in zip(left, right)]


@dataclass
class BlowupChart:
    chart_index: int          # 1-based column index j
    chart: str                # "s" or "t" (that variable is set to 1)
    equations: list           # n-1 chart equations
    exceptional_equation: MultiPoly
    _f: list = field(repr=False, default=None)
    _h: PolyMatrix = field(repr=False, default=None)

    def verify(self):
        """Check the divisibility postcondition exactly.

        Multiplying the original system (with f_j eliminated through the
        exceptional relation) by adj(H_j) yields det(H_j) times the chart
        equations; equivalently each component is divisible by det(H_j)
        with quotient the corresponding chart equation.
        """
        f, h, j = self._f, self._h, self.chart_index - 1
        hj = h.drop_col(j)
        hcol = h.column(j)
        adj = adjugate(hj)
        det = determinant(hj)
        ring = f[0]
        if self.chart == "s":
            t = MultiPoly.var(ring.domain, ring.variables, "t")
            f_sub = list(f)
            f_sub[j] = t * det
        else:
            s = MultiPoly.var(ring.domain, ring.variables, "s")
            f_sub = [s * fi for fi in f]
            f_sub[j] = det
        others = [fi for k, fi in enumerate(f_sub) if k != j]
        system = [hi + f_sub[j] * hc
                  for hi, hc in zip(hj.mul_vec(others), hcol)]
        lifted = adj.mul_vec(system)
        for comp, eq in zip(lifted, self.equations):
            q = divide_exact(comp, det)
            if q is None or not (q - eq).is_zero():
                return False
        return True


def blowup_chart(f, h, j, chart="s"):
    """Chart equations for the blow-up of the ideal (f_j, det H_j).

    f: n polynomials, h: (n-1) x n matrix, j: 1-based column index.
    The chart variable (s or t) is set to 1; equations are returned in the
    ring extended by the remaining projective coordinate.
    """
    n = h.cols
    if h.rows != n - 1 or len(f) != n:
        raise ValueError("dimension mismatch")
    if not 1 <= j <= n:
        raise ValueError("column index out of range")
    if chart not in ("s", "t"):
        raise ValueError("chart must be 's' or 't'")
    ring = f[0]
    new_vars = tuple(ring.variables) + ("s", "t")
    fx = [fi.extend_vars(new_vars) for fi in f]
    hx = PolyMatrix.from_rows(
        [[e.extend_vars(new_vars) for e in row] for row in h.entries])
    jj = j - 1
    hj = hx.drop_col(jj)
    hcol = hx.column(jj)
    adj = adjugate(hj)
    det = determinant(hj)
    s = MultiPoly.var(fx[0].domain, new_vars, "s")
    t = MultiPoly.var(fx[0].domain, new_vars, "t")
    fprime = [fi for k, fi in enumerate(fx) if k != jj]
    adj_h = adj.mul_vec(hcol)
    if chart == "s":
        eqs = [fi + t * c for fi, c in zip(fprime, adj_h)]
        exc = fx[jj] - t * det
    else:
        eqs = [s * fi + c for fi, c in zip(fprime, adj_h)]
        exc = s * fx[jj] - det
    # drop the chart variable from the stored ring (it is set to 1)
    keep = tuple(v for v in new_vars if v != chart)
    one = {chart: 1}
    eqs = [e.subs(one)._strip(chart, keep) for e in eqs]
    exc = exc.subs(one)._strip(chart, keep)
    fk = [fi._strip(chart, keep) for fi in fx]
    hk = PolyMatrix.from_rows(
        [[e._strip(chart, keep) for e in row] for row in hx.entries])
    return BlowupChart(chart_index=j, chart=chart, equations=eqs,
                       exceptional_equation=exc, _f=fk, _h=hk)


def _strip(self, name, keep):
    idx = self.variables.index(name)
    terms = {}
    for e, c in self.terms.items():
        if e[idx] != 0:
            raise ValueError(f"variable {name} still present")
        terms[tuple(x for i, x in enumerate(e) if i != idx)] = c
    return MultiPoly(self.domain, keep, terms)


MultiPoly._strip = _strip


def jacobian(f):
    return [f.partial(v) for v in f.variables]


@dataclass
class SingularLocusReport:
    ok: bool
    trials: int
    on_locus_hits: int
    mismatches: int


def singular_locus_check(f, expected_locus, trials=10000, p=101, seed=0):
    """Probabilistic audit that {f = grad f = 0} equals the expected locus.

    expected_locus: None for the empty locus, else a list of conditions,
    each a variable name (meaning var = 0) or a MultiPoly (meaning poly = 0).
    Set-theoretic vanishing only; points are sampled over F_p, half of them
    with the zero-constrained variables forced to 0.
    """
    rng = random.Random(seed)
    names = f.variables
    zero_vars = set()
    poly_conds = []
    if expected_locus is not None:
        for cond in expected_locus:
            if isinstance(cond, str):
                zero_vars.add(cond)
            else:
                poly_conds.append(cond)
    grads = jacobian(f)

    def eval_mod(poly, pt):
        total = 0
        for e, c in poly.terms.items():
            v = int(c) % p
            for x, k in zip(pt, e):
                if k:
                    v = v * pow(x, k, p) % p
            total = (total + v) % p
        return total

    hits = 0
    mism = 0
    for trial in range(trials):
        pt = [rng.randrange(p) for _ in names]
        if trial % 2 == 0:
            if expected_locus is None:
                # probe coordinate subspaces so small loci are not missed
                for i in range(len(names)):
                    if rng.random() < 0.5:
                        pt[i] = 0
            else:
                for i, nm in enumerate(names):
                    if nm in zero_vars:
                        pt[i] = 0
        if expected_locus is None:
            on_locus = False
        else:
            on_locus = all(pt[names.index(nm)] == 0 for nm in zero_vars) and \
                all(eval_mod(c, pt) == 0 for c in poly_conds)
        singular = eval_mod(f, pt) == 0 and \
            all(eval_mod(g, pt) == 0 for g in grads)
        if on_locus:
            hits += 1
        if singular != on_locus:
            mism += 1
    return SingularLocusReport(ok=mism == 0, trials=trials,
                               on_locus_hits=hits, mismatches=mism)


# -- determinantal codimension estimation ----------------------------------

SQUARE = "square"
N_BY_N_MINUS_1 = "n_by_n_minus_1"


class Indeterminate(Exception):
    """Raised when no sampled fiber met the rank condition."""


def _solve_count_mod_p(rows, p, ncols):
    """Number of solutions of an affine system (rows include the constant
    column last); returns p**(ncols - rank) or 0 when inconsistent."""
    a = [row[:] for row in rows]
    n = len(a)
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, n):
            if a[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] % p:
                fct = a[i][c]
                a[i] = [(x - fct * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if a[i][ncols] % p:
            return 0
    return p ** (ncols - r)


def rank_locus_codim_estimate(n, shape, ambient_dim, p, trials, seed=0):
    """Estimated codimension of a determinantal rank locus over F_p.

    A matrix of random affine-linear forms in ambient_dim variables is
    instantiated. The locus point count is estimated by Monte Carlo over
    kernel directions: each sampled direction (a point of P^(n-2) for the
    n x (n-1) rank-drop locus, a plane of Gr(2, n) for the singular locus
    of an n x n determinant) turns the rank condition into a linear system
    whose solutions are counted exactly; uniform point sampling cannot
    resolve codimension 4 at this field size, this fiber decomposition can.
    Returns round(ambient_dim - log_p(estimated count)).
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if ambient_dim < 4:
        raise ValueError("ambient_dim must be at least 4")
    rng = random.Random(seed)
    if shape == SQUARE:
        nrows, ncols_m = n, n
        kdim = 2  # singular locus of det = rank <= n-2
    elif shape == N_BY_N_MINUS_1:
        nrows, ncols_m = n, n - 1
        kdim = 1  # rank < n-1
    else:
        raise ValueError("shape must be SQUARE or N_BY_N_MINUS_1")
    if ncols_m < kdim:
        raise ValueError("matrix too small for the rank condition")
    # entries: affine linear forms, coeffs[r][c] = [a_1..a_amb, const]
    forms = [[[rng.randrange(p) for _ in range(ambient_dim + 1)]
              for _ in range(ncols_m)] for _ in range(nrows)]

    def sample_directions():
        while True:
            vs = [[rng.randrange(p) for _ in range(ncols_m)]
                  for _ in range(kdim)]
            if rank_of_small(vs) == kdim:
                return vs

    def rank_of_small(vs):
        a = [row[:] for row in vs]
        r = 0
        for c in range(ncols_m):
            piv = next((i for i in range(r, len(a)) if a[i][c] % p), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = pow(a[r][c], -1, p)
            a[r] = [x * inv % p for x in a[r]]
            for i in range(len(a)):
                if i != r and a[i][c] % p:
                    fct = a[i][c]
                    a[i] = [(x - fct * y) % p for x, y in zip(a[i], a[r])]
            r += 1
        return r

    total = 0
    for _ in range(trials):
        vs = sample_directions()
        rows = []
        for v in vs:
            for i in range(nrows):
                row = [0] * (ambient_dim + 1)
                for c in range(ncols_m):
                    vc = v[c]
                    if vc:
                        fc = forms[i][c]
                        for k in range(ambient_dim + 1):
                            row[k] = (row[k] + vc * fc[k]) % p
                row[ambient_dim] = (-row[ambient_dim]) % p  # move const to rhs
                rows.append(row)
        total += _solve_count_mod_p(rows, p, ambient_dim)
    if total == 0:
        raise Indeterminate(f"no locus point found in {trials} samples")
    if shape == SQUARE:
        space = ((p ** n - 1) * (p ** n - p)) // ((p * p - 1) * (p * p - p))
    else:
        space = (p ** (n - 1) - 1) // (p - 1) if n >= 2 else 1
    estimate = Fraction(space * total, trials)
    return round(ambient_dim - log(estimate) / log(p))


# -- fuzz suites (shared by tests and the CLI verify command) ---------------


def _random_poly(rng, domain, variables, degree=2, nterms=3, coeff=5):
    terms = {}
    for _ in range(nterms):
        e = [0] * len(variables)
        for _ in range(rng.randrange(degree + 1)):
            e[rng.randrange(len(variables))] += 1
        c = rng.randint(-coeff, coeff)
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return MultiPoly(domain, variables, terms)


def fuzz_adjugate(cases=200, seed=0, max_size=4):
    """adjugate(M) . M = det(M) . I on random polynomial matrices."""
    rng = random.Random(seed)
    variables = ("x1", "x2", "x3", "x4", "x5")
    failures = 0
    for _ in range(cases):
        n = rng.randint(1, max_size)
        nv = rng.randint(1, len(variables))
        vs = variables[:nv]
        m = PolyMatrix.from_rows(
            [[_random_poly(rng, ZZ, vs, degree=2, nterms=2)
              for _ in range(n)] for _ in range(n)])
        adj = adjugate(m)
        det = determinant(m)
        prod = adj.matmul(m)
        ident = poly_identity(n, ZZ, vs)
        for i in range(n):
            for j in range(n):
                want = det if i == j else det * 0
                if not (prod.entries[i][j] - want).is_zero():
                    failures += 1
        prod2 = m.matmul(adj)
        for i in range(n):
            for j in range(n):
                want = det if i == j else det * 0
                if not (prod2.entries[i][j] - want).is_zero():
                    failures += 1
    return failures


def fuzz_adjoint_relation(cases=200, seed=0):
    """derive_adjoint_relation is identically zero on random inputs."""
    rng = random.Random(seed)
    variables = ("x1", "x2", "x3", "x4")
    failures = 0
    for _ in range(cases):
        n = rng.randint(2, 4)
        h = PolyMatrix.from_rows(
            [[_random_poly(rng, ZZ, variables, degree=1, nterms=2)
              for _ in range(n)] for _ in range(n - 1)])
        f = [_random_poly(rng, ZZ, variables, degree=2, nterms=2)
             for _ in range(n)]
        res = derive_adjoint_relation(h, f)
        if any(not r.is_zero() for r in res):
            failures += 1
    return failures


def fuzz_blowup_charts(cases=100, seed=0):
    """Chart divisibility postcondition on random n = 2, 3 instances."""
    rng = random.Random(seed)
    variables = ("x1", "x2", "x3")
    failures = 0
    for _ in range(cases):
        n = rng.randint(2, 3)
        h = PolyMatrix.from_rows(
            [[_random_poly(rng, ZZ, variables, degree=1, nterms=2)
              for _ in range(n)] for _ in range(n - 1)])
        f = [_random_poly(rng, ZZ, variables, degree=2, nterms=2)
             for _ in range(n)]
        j = rng.randint(1, n)
        chart = rng.choice(("s", "t"))
        hj = h.drop_col(j - 1)
        if determinant(hj).is_zero():
            continue  # degenerate instance, quotient not unique
        ch = blowup_chart(f, h, j, chart)
        if not ch.verify():
            failures += 1
    return failures
