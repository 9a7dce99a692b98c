"""Exact-rational antiderivative engine for even-dimension Green functions.

The Green function of Delta* + a on S^n is an iterated radial integral of
the (subtracted) Poisson kernel.  For even n the kernel power (n+1)/2 is a
half-integer and all the radial antiderivatives stay inside a small closed
algebra: bivariate rational terms over powers of

    u(t, v) = 1 - 2 t v + v^2        (v is the radial variable),

half-integer powers of u (sqrt(u) factors), powers of 1 - t^2, and the
logarithms ln(v - t + sqrt(u)), ln(1 - t v + sqrt(u)), ln v.  This module
implements that algebra with exact Fraction coefficients, the recurrence
tables behind four antiderivative families, and the assembler that chains
them into the closed form of the Green function for even n and integer L
(a = L(n+L-1)).  Floating point enters only at evaluation time.

Antiderivative families (constants of integration fixed to the displayed
forms, C = 0):

  radial_split_polynomials(lam) / zonal_kernel_radial_antiderivative(lam)
      int [ (1-r^2) / (r u^{lam+1}) - 1/r ] dr   for half-integer lam,
      via the splitting polynomials Q_j.

  shifted_power_antiderivative(k, J)
      int V^k / (T + V^2)^{J+1/2} dV   in shifted variables, T != 0;
      three coefficient patterns by the parity of k and k/2 vs J.

  kernel_power_antiderivative(L, J)
      int v^L / u^{J+1/2} dv = A(t,v)/(u^{J-1/2} (1-t^2)^J)
                               + B(t) ln(v - t + sqrt(u)),
      assembled from the shifted family through T = 1-t^2, V = v-t.

  kernel_log_antiderivative(k)
      int v^k ln(1 - t v + sqrt(u)) dv
        = p_k(t,v) sqrt(u) + q_k(t) ln(v - t + sqrt(u))
          + v^{k+1}/(k+1) [ ln(1 - t v + sqrt(u)) - 1/(k+1) ],
      with recursively defined coefficient polynomials pi_j^k
      (out-of-range indices are zero; validated by quadrature in the
      tests).  k = 0 degenerates to
      v ln(1 - t v + sqrt(u)) - v + ln(v - t + sqrt(u)).

Assembly.  With J = n/2, lambda = J - 1/2, and S(r) = Sigma_n p_r(t) minus
its partial sum through degree M, the Green function is the double radial
integral

    G(t) = -int_0^1 R^{-(n+2L)} int_0^R r^{n+L-2} S(r) dr dR + correction.

Swapping the integration order collapses it to two single integrals

    G(t) = -(D1 - D2)/(n+2L-1) + correction,
    D1 = int_0^1 r^{-L-1} S(r) dr,    D2 = int_0^1 r^{n+L-2} S(r) dr

(n+2L-1 is odd, hence nonzero, for even n).  D2 and the L < 0 form of D1
are direct kernel_power antiderivatives.  For L = 0 the assembler follows
the two-step route instead: gamma = the zonal-kernel radial
antiderivative, zeta = int R^{n-2} (gamma(R) - gamma(0)) dR composed from
kernel_power and kernel_log antiderivatives, and G = zeta(0) - zeta(1);
the order swap shows the two routes agree.  For L >= 1 the D1 integrand
is mapped by r = 1/w onto [1, infinity); the finite part of its
antiderivative at w -> infinity is extracted from exact asymptotic series
(generating-function expansions of the u powers), and every divergent
power of w - and the ln w coefficient - is asserted to cancel exactly.

The final collected expression has the shape

    rational(t) / ((1-t)^p (1+t)^q)  +  c(t) * ln((1-t)/2);

sqrt(1-t) and ln(1-t+sqrt(2(1-t))) contributions must cancel identically
for even n, and the assembler asserts that they do.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, log, sqrt

from .errors import NoClosedFormError, SphereDomainError

F0 = Fraction(0)
F1 = Fraction(1)


# ---------------------------------------------------------------------------
# exact polynomials: univariate {i: Fraction}, bivariate {(i, j): Fraction}
# ---------------------------------------------------------------------------

def _clean(p):
    return {k: c for k, c in p.items() if c != 0}


def padd(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, F0) + c
    return _clean(out)


def pscale(a, s):
    s = Fraction(s)
    return _clean({k: c * s for k, c in a.items()})


def pmul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            if isinstance(ka, tuple):
                k = (ka[0] + kb[0], ka[1] + kb[1])
            else:
                k = ka + kb
            out[k] = out.get(k, F0) + ca * cb
    return _clean(out)


def ppow(a, m, bivariate=None):
    if m < 0:
        raise ValueError("negative polynomial power")
    if bivariate is None:
        bivariate = bool(a) and isinstance(next(iter(a)), tuple)
    out = {(0, 0) if bivariate else 0: F1}
    for _ in range(m):
        out = pmul(out, a)
    return out


def uni_eval(p, t):
    return sum(float(c) * t ** i for i, c in p.items())


def bi_eval(p, t, v):
    return sum(float(c) * t ** i * v ** j for (i, j), c in p.items())


def uni_to_bi(p):
    return {(i, 0): c for i, c in p.items()}


def bi_sub_v0(p, v0):
    """Bivariate -> univariate in t at v = v0 (exact rational v0)."""
    v0 = Fraction(v0)
    out = {}
    for (i, j), c in p.items():
        out[i] = out.get(i, F0) + c * v0 ** j
    return _clean(out)


# building blocks in sphere variables (t, v)
BP_T = {(1, 0): F1}                       # t
BP_V = {(0, 1): F1}                       # v
BP_ONE = {(0, 0): F1}
BP_R = {(0, 1): F1, (1, 0): -F1}          # v - t
BP_TT = {(0, 0): F1, (2, 0): -F1}         # 1 - t^2
P_1MT = {0: F1, 1: -F1}                   # 1 - t   (univariate)
P_1PT = {0: F1, 1: F1}                    # 1 + t


def gegenbauer_poly(lam, l_max):
    """Exact C_l^lam(t) for l = 0..l_max as univariate polynomials, lam rational."""
    lam = Fraction(lam)
    out = [{0: F1}]
    if l_max >= 1:
        out.append(_clean({1: 2 * lam}))
    for l in range(2, l_max + 1):
        a = pscale(pmul({1: F1}, out[l - 1]), 2 * (l + lam - 1))
        b = pscale(out[l - 2], Fraction(l) + 2 * lam - 2)
        out.append(pscale(padd(a, pscale(b, -1)), Fraction(1, l)))
    return out


# ---------------------------------------------------------------------------
# expression terms (functions of the sphere variables t, v)
# ---------------------------------------------------------------------------
# RatTerm: num(t, v) * u^{uhalf/2} / (1-t^2)^{tpow}
# LogTerm: coef(t, v) / (1-t^2)^{tpow} * ln(arg), arg keyed by kind:
#   "A" -> v - t + sqrt(u);  "B" -> 1 - t v + sqrt(u);  "V" -> v;  "2" -> 2.

@dataclass(frozen=True)
class RatTerm:
    num: dict
    uhalf: int = 0
    tpow: int = 0


@dataclass(frozen=True)
class LogTerm:
    coef: dict
    kind: str
    tpow: int = 0


def _scale_term(term, s):
    if isinstance(term, RatTerm):
        return RatTerm(pscale(term.num, s), term.uhalf, term.tpow)
    return LogTerm(pscale(term.coef, s), term.kind, term.tpow)


def expr_scale(terms, s):
    return [_scale_term(term, s) for term in terms]


def _mul_tpoly(term, tpoly):
    bi = uni_to_bi(tpoly)
    if isinstance(term, RatTerm):
        return RatTerm(pmul(term.num, bi), term.uhalf, term.tpow)
    return LogTerm(pmul(term.coef, bi), term.kind, term.tpow)


def _raise_tpow(term, extra):
    if isinstance(term, RatTerm):
        return RatTerm(term.num, term.uhalf, term.tpow + extra)
    return LogTerm(term.coef, term.kind, term.tpow + extra)


def expr_eval(terms, t, v):
    """Floating-point value of an expression at (t, v)."""
    u = 1.0 - 2.0 * t * v + v * v
    total = 0.0
    for term in terms:
        if isinstance(term, RatTerm):
            val = bi_eval(term.num, t, v)
            if term.uhalf:
                val *= u ** (term.uhalf / 2.0)
        else:
            if term.kind == "A":
                arg = v - t + sqrt(u)
            elif term.kind == "B":
                arg = 1.0 - t * v + sqrt(u)
            elif term.kind == "V":
                arg = v
            elif term.kind == "2":
                arg = 2.0
            else:
                raise ValueError(term.kind)
            val = bi_eval(term.coef, t, v) * log(arg)
        if term.tpow:
            val /= (1.0 - t * t) ** term.tpow
        total += val
    return total


# ---------------------------------------------------------------------------
# recurrence tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceTable:
    """Exact-rational coefficient family, indexed per its defining recurrence."""

    family: str
    entries: dict


def radial_split_polynomials(lam):
    """Splitting polynomials Q_j, j = 0..lam-3/2, univariate in T = 1-t^2.

    Defined by   1 = 2(lam-1) Q_0,
                 0 = 2(lam-2) Q_1 - [(2lam-3) + 2(lam-1) T] Q_0,
                 0 = 2(lam-j-1) Q_j - [(2lam-2j-1) + 2(lam-j) T] Q_{j-1}
                     + (2lam-2j+1) T Q_{j-2},      j = 2..lam-3/2.

    lam = 1/2 has an empty table (all index ranges are empty).
    """
    lam = Fraction(lam)
    if lam.denominator != 2 or lam <= 0:
        raise SphereDomainError(f"lam must be a positive half-integer (odd/2), got {lam}")
    top = int(lam - Fraction(3, 2))
    qs = {}
    if top >= 0:
        qs[0] = {0: 1 / (2 * (lam - 1))}
    if top >= 1:
        bracket = {0: 2 * lam - 3, 1: 2 * (lam - 1)}
        qs[1] = pscale(pmul(bracket, qs[0]), 1 / (2 * (lam - 2)))
    for j in range(2, top + 1):
        bracket = {0: 2 * lam - 2 * j - 1, 1: 2 * (lam - j)}
        term = pmul(bracket, qs[j - 1])
        term = padd(term, pscale(pmul({1: F1}, qs[j - 2]), -(2 * lam - 2 * j + 1)))
        qs[j] = pscale(term, 1 / (2 * (lam - j - 1)))
    return RecurrenceTable(family="radial-split", entries=qs)


def zonal_kernel_radial_antiderivative(lam):
    """Antiderivative of (1-r^2)/(r u^{lam+1}) - 1/r for half-integer lam.

    In sphere variables (t, v = r):

        1/(lam u^lam) + (1/2) sum_j 1/((lam-j) u^{lam-j})
        + sum_j t Q_{j-1}(1-t^2) (v-t) / ((1-t^2)^j u^{lam-j})
        - ln(1 - t v + sqrt(u)),        j = 1..lam-1/2.
    """
    lam = Fraction(lam)
    qs = radial_split_polynomials(lam).entries
    terms = [RatTerm({(0, 0): 1 / lam}, uhalf=-int(2 * lam))]
    for j in range(1, int(lam + Fraction(1, 2))):
        terms.append(RatTerm({(0, 0): Fraction(1, 2) / (lam - j)},
                             uhalf=-int(2 * (lam - j))))
        qpoly_t = {}          # Q_{j-1}(1-t^2) expanded in t
        for e, c in qs[j - 1].items():
            qpoly_t = padd(qpoly_t, pscale(ppow(BP_TT, e, bivariate=True), c))
        num = pmul(pmul(BP_T, qpoly_t), BP_R)
        terms.append(RatTerm(num, uhalf=-int(2 * (lam - j)), tpow=j))
    terms.append(LogTerm(pscale(BP_ONE, -1), "B"))
    return terms


def _double_factorial(m):
    # (-1)!! = 1 by convention
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _binom(n, k):
    if k < 0 or k > n:
        return F0
    out = F1
    for i in range(k):
        out = out * (n - i) / (i + 1)
    return out


def shifted_leading_coefficient(kappa, J):
    """a^{kappa,J+1/2} = (-1)^{kappa-J} (2kappa-1)!! / (2^{kappa-J} (kappa-J)! (2J-1)!!)."""
    num = Fraction((-1) ** (kappa - J) * _double_factorial(2 * kappa - 1))
    den = Fraction(2 ** (kappa - J) * factorial(kappa - J) * _double_factorial(2 * J - 1))
    return num / den


def shifted_polynomial_coefficients(kappa, J):
    """a_iota^{kappa,J+1/2}, iota = 0..kappa-1 (empty table for kappa = 0).

    a_0 = -a,  a_1 = -(3J-2) a / 3,
    a_iota = (2(J-iota) a_{iota-1} - a binom(J, iota)) / (2 iota + 1),
    with binom(J, iota) = 0 for iota > J.
    """
    a = shifted_leading_coefficient(kappa, J)
    out = []
    if kappa >= 1:
        out.append(-a)
    if kappa >= 2:
        out.append(-(3 * J - 2) * a / 3)
    for iota in range(2, kappa):
        out.append((2 * (J - iota) * out[iota - 1] - a * _binom(J, iota))
                   / (2 * iota + 1))
    return RecurrenceTable(family=f"shifted({kappa},{J})",
                           entries={"lead": a, "poly": out})


def shifted_power_antiderivative(k, J):
    """int V^k / (T + V^2)^{J+1/2} dV as raw terms in (T, V).

    Term encodings (core = T + V^2):
      ("rat", num{(i,j): c}, chalf, tden):  num * core^{chalf/2} / T^{tden}
      ("log", coef{(i,j): c}):              coef * ln(V + sqrt(core))

    odd k = 2kappa+1:
        sum_iota binom(kappa,iota) (-1)^{kappa-iota+1}/(2(J-iota)-1)
                 T^{kappa-iota} core^{-(J-iota-1/2)}
    even k = 2kappa, kappa < J:
        T^{kappa-J} sum_iota binom(J-kappa-1,iota) (-1)^{J-kappa-iota-1}
                 /(2(J-iota)-1) V^{2(J-iota)-1} core^{-(J-iota-1/2)}
    even k = 2kappa, kappa >= J:
        V core^{-(J-1/2)} sum_iota a_iota T^{kappa-iota-1} V^{2 iota}
        + a T^{kappa-J} ln(V + sqrt(core)).
    """
    if k < 0 or J < 0:
        raise SphereDomainError(f"need k, J >= 0, got k={k}, J={J}")
    terms = []
    if k % 2 == 1:
        kappa = (k - 1) // 2
        for iota in range(kappa + 1):
            c = _binom(kappa, iota) * Fraction((-1) ** (kappa - iota + 1),
                                               2 * (J - iota) - 1)
            terms.append(("rat", {(kappa - iota, 0): c}, -(2 * (J - iota) - 1), 0))
        return terms
    kappa = k // 2
    if kappa < J:
        for iota in range(J - kappa):
            c = _binom(J - kappa - 1, iota) * Fraction((-1) ** (J - kappa - iota - 1),
                                                       2 * (J - iota) - 1)
            terms.append(("rat", {(0, 2 * (J - iota) - 1): c},
                          -(2 * (J - iota) - 1), J - kappa))
        return terms
    table = shifted_polynomial_coefficients(kappa, J)
    a = table.entries["lead"]
    for iota, ai in enumerate(table.entries["poly"]):
        terms.append(("rat", {(kappa - iota - 1, 2 * iota + 1): ai},
                      -(2 * J - 1), 0))
    terms.append(("log", {(kappa - J, 0): a}))
    return terms


def eval_shifted(terms, T, V):
    """Evaluate raw shifted-family terms at numeric (T, V), T != 0."""
    core = T + V * V
    total = 0.0
    for term in terms:
        if term[0] == "rat":
            _kind, num, chalf, tden = term
            val = sum(float(c) * T ** i * V ** j for (i, j), c in num.items())
            val *= core ** (chalf / 2.0)
            if tden:
                val /= T ** tden
            total += val
        else:
            coef = sum(float(c) * T ** i * V ** j for (i, j), c in term[1].items())
            total += coef * log(V + sqrt(core))
    return total


def _shifted_to_sphere(terms):
    """Map raw (T, V) terms into sphere terms via T = 1-t^2, V = v-t.

    The core becomes u; V + sqrt(core) becomes v - t + sqrt(u) (kind "A");
    1/T^d becomes the (1-t^2)^d denominator.
    """
    out = []
    for term in terms:
        if term[0] == "rat":
            _kind, num, chalf, tden = term
            poly = {}
            for (i, j), c in num.items():
                poly = padd(poly, pscale(pmul(ppow(BP_TT, i, bivariate=True),
                                              ppow(BP_R, j, bivariate=True)), c))
            out.append(RatTerm(poly, uhalf=chalf, tpow=tden))
        else:
            poly = {}
            for (i, j), c in term[1].items():
                if i < 0:
                    raise AssertionError("log coefficients carry no negative T powers")
                poly = padd(poly, pscale(pmul(ppow(BP_TT, i, bivariate=True),
                                              ppow(BP_R, j, bivariate=True)), c))
            out.append(LogTerm(poly, "A"))
    return out


def kernel_power_antiderivative(L, J):
    """int v^L / u^{J+1/2} dv via the binomial shift onto the shifted family.

    v^L = ((v-t) + t)^L = sum_k binom(L,k) t^{L-k} (v-t)^k, so the result
    is sum_k binom(L,k) t^{L-k} shifted_power_antiderivative(k, J) mapped
    into sphere variables.
    """
    if L < 0 or J < 0:
        raise SphereDomainError(f"need L, J >= 0, got L={L}, J={J}")
    terms = []
    for k in range(L + 1):
        c = _binom(L, k)
        mono = {L - k: c}
        for term in _shifted_to_sphere(shifted_power_antiderivative(k, J)):
            terms.append(_mul_tpoly(term, mono))
    return terms


def log_coefficient_polynomials(k):
    """pi_j^k, j = 0..k-1, univariate in t; out-of-range indices are zero.

    pi_{k-1} = 1/(k(k+1)) and, downward for j = k-2..0,

        pi_j = [(2j+3) t pi_{j+1} - (j+2) pi_{j+2}] / (j+1),

    with pi_k = 0.  This is the unique family making
    p' u + p (v-t) + q = v^k/(k+1) hold for p = sum_j pi_j v^j; the
    specialisations pi_{k-2} = (2k-1) t pi_{k-1}/(k-1) and
    pi_0 = 3 t pi_1 - 2 pi_2 follow.
    """
    if k < 1:
        raise SphereDomainError(f"need k >= 1, got {k}")
    pi = {k - 1: {0: Fraction(1, k * (k + 1))}}
    for j in range(k - 2, -1, -1):
        term = pscale(pmul({1: F1}, pi[j + 1]), Fraction(2 * j + 3, j + 1))
        term = padd(term, pscale(pi.get(j + 2, {}), Fraction(-(j + 2), j + 1)))
        pi[j] = term
    return RecurrenceTable(family=f"log-coefficients({k})", entries=pi)


def kernel_log_antiderivative(k):
    """int v^k ln(1 - t v + sqrt(u)) dv as sphere terms.

    k >= 1 follows the recurrence display; k = 0 is the degenerate closed
    form v ln(1 - t v + sqrt(u)) - v + ln(v - t + sqrt(u)).
    """
    if k < 0:
        raise SphereDomainError(f"need k >= 0, got {k}")
    if k == 0:
        return [LogTerm(dict(BP_V), "B"),
                RatTerm(pscale(BP_V, -1)),
                LogTerm(dict(BP_ONE), "A")]
    pi = log_coefficient_polynomials(k).entries
    p_k = {}
    for j in range(k):
        p_k = padd(p_k, pmul({(0, j): F1}, uni_to_bi(pi.get(j, {}))))
    q_k = padd(pmul({1: F1}, pi.get(0, {})), pscale(pi.get(1, {}), -1))
    return [RatTerm(p_k, uhalf=1),
            LogTerm(uni_to_bi(q_k), "A"),
            LogTerm({(0, k + 1): Fraction(1, k + 1)}, "B"),
            RatTerm({(0, k + 1): Fraction(-1, (k + 1) ** 2)})]


# ---------------------------------------------------------------------------
# asymptotics at v -> infinity (exact, coefficients in Q[t])
# ---------------------------------------------------------------------------

class _Asym:
    """Divergent powers, ln v coefficient, and finite parts of an antiderivative.

    Every piece keeps its (1-t^2)^tpow denominator as a dict key, so exact
    cancellation can be tested over a common denominator.
    """

    def __init__(self):
        self.powers = {}        # m >= 1 -> {tpow -> poly}
        self.logv = {}          # tpow -> poly
        self.const = {}         # tpow -> poly
        self.const_log2 = {}    # tpow -> poly

    @staticmethod
    def _fold(slot, tpow, poly):
        if poly:
            slot[tpow] = padd(slot.get(tpow, {}), poly)

    def add_rat(self, term):
        """num(t,v) u^{h/2}: expand via (1-2tx+x^2)^{h/2}, x = 1/v."""
        h = term.uhalf
        deg_v = max((j for (_i, j) in term.num), default=0)
        top = deg_v + h
        series = gegenbauer_poly(Fraction(-h, 2), max(top, 0) + 1)
        for (i, j), c in term.num.items():
            for kk in range(0, j + h + 1):
                m = j + h - kk
                contrib = pscale(pmul({i: F1}, series[kk]), c)
                if m > 0:
                    self.powers.setdefault(m, {})
                    self._fold(self.powers[m], term.tpow, contrib)
                elif m == 0:
                    self._fold(self.const, term.tpow, contrib)

    def add_log(self, term):
        """v-free-coefficient logs: A -> ln v + ln 2 + O(1/v); V -> ln v."""
        if any(j != 0 for (_i, j) in term.coef):
            raise SphereDomainError("asymptotics need v-free log coefficients")
        coef = bi_sub_v0(term.coef, 0)
        if term.kind == "A":
            self._fold(self.logv, term.tpow, coef)
            self._fold(self.const_log2, term.tpow, coef)
        elif term.kind == "V":
            self._fold(self.logv, term.tpow, coef)
        else:
            raise SphereDomainError(f"log kind {term.kind} has no v->inf limit here")

    @staticmethod
    def total_over_common(slot):
        """sum of poly/(1-t^2)^tpow lifted over the common denominator."""
        if not slot:
            return {}
        top = max(slot)
        total = {}
        for tp, poly in slot.items():
            total = padd(total, pmul(poly, ppow({0: F1, 2: -F1}, top - tp)))
        return _clean(total)


# ---------------------------------------------------------------------------
# endpoint collection
# ---------------------------------------------------------------------------
# Atoms of the collected closed form, as functions of t:
#   rational atoms keyed (e1m2, e1p, s2):
#       poly(t) * sqrt(2)^{s2} / ((1-t)^{e1m2/2} (1+t)^{e1p})
#   log atoms keyed (name, tpow) with name in:
#       "L1MT" ln(1-t);  "L2" ln 2;  "LS" ln(1-t+sqrt(2(1-t))).

class Collector:
    def __init__(self):
        self.rat = {}
        self.logs = {}

    def add_rat(self, key, poly):
        if poly:
            self.rat[key] = padd(self.rat.get(key, {}), poly)

    def add_log(self, name, tpow, poly):
        if poly:
            key = (name, tpow)
            self.logs[key] = padd(self.logs.get(key, {}), poly)

    def add_term_at(self, term, v0, sign):
        """Fold one term evaluated at v = v0 (0 or 1), scaled by sign."""
        if isinstance(term, RatTerm):
            poly = pscale(bi_sub_v0(term.num, v0), sign)
            if not poly:
                return
            if v0 == 0:
                # u -> 1
                self.add_rat((2 * term.tpow, term.tpow, 0), poly)
            else:
                # u -> 2(1-t): u^{h/2} = 2^{(h-s2)/2} sqrt(2)^{s2} (1-t)^{h/2}
                h = term.uhalf
                twos, s2 = divmod(h, 2)      # s2 in {0,1} for either sign of h
                poly = pscale(poly, Fraction(2) ** twos)
                self.add_rat((2 * term.tpow - h, term.tpow, s2), poly)
        else:
            poly = pscale(bi_sub_v0(term.coef, v0), sign)
            if not poly:
                return
            if term.kind == "2":
                self.add_log("L2", term.tpow, poly)
            elif v0 == 0:
                if term.kind == "A":
                    self.add_log("L1MT", term.tpow, poly)
                elif term.kind == "B":
                    self.add_log("L2", term.tpow, poly)
                else:
                    raise SphereDomainError(
                        "ln v evaluated at v = 0 with a nonzero coefficient")
            else:
                if term.kind in ("A", "B"):
                    # both arguments become 1 - t + sqrt(2(1-t))
                    self.add_log("LS", term.tpow, poly)
                # kind "V": ln 1 = 0

    def add_expression_at(self, terms, v0, sign):
        for term in terms:
            self.add_term_at(term, v0, sign)

    def log_total(self, name):
        """Combined coefficient of a log atom over its (1-t^2) denominators.

        Returns (numerator poly, tpow) with the common denominator
        (1-t^2)^tpow.
        """
        slot = {tp: poly for (nm, tp), poly in self.logs.items() if nm == name}
        if not slot:
            return {}, 0
        top = max(slot)
        total = {}
        for tp, poly in slot.items():
            total = padd(total, pmul(poly, ppow({0: F1, 2: -F1}, top - tp)))
        return _clean(total), top


# ---------------------------------------------------------------------------
# final expression
# ---------------------------------------------------------------------------

@dataclass
class GreenClosedForm:
    """rational(t)/((1-t)^{pow_1mt}(1+t)^{pow_1pt}) + log_coef(t) ln((1-t)/2)."""

    n: int
    L: int
    num: dict
    pow_1mt: int
    pow_1pt: int
    log_coef: dict

    def eval(self, t):
        t = float(t)
        val = uni_eval(self.num, t)
        if self.pow_1mt:
            val /= (1.0 - t) ** self.pow_1mt
        if self.pow_1pt:
            val /= (1.0 + t) ** self.pow_1pt
        if self.log_coef:
            val += uni_eval(self.log_coef, t) * log((1.0 - t) / 2.0)
        return val

    def __call__(self, t):
        return self.eval(t)

    def text(self):
        parts = []
        if self.num:
            rat = _format_poly(self.num, latex=False)
            den = _format_denominator(self.pow_1mt, self.pow_1pt, latex=False)
            parts.append(f"({rat})/({den})" if den else f"({rat})" if "+" in rat or "-" in rat[1:] else rat)
        if self.log_coef:
            parts.append(f"({_format_poly(self.log_coef, latex=False)})*log((1-t)/2)")
        return " + ".join(parts) if parts else "0"

    def latex(self):
        parts = []
        if self.num:
            rat = _format_poly(self.num, latex=True)
            den = _format_denominator(self.pow_1mt, self.pow_1pt, latex=True)
            parts.append(rf"\frac{{{rat}}}{{{den}}}" if den else rat)
        if self.log_coef:
            parts.append(
                rf"\left({_format_poly(self.log_coef, latex=True)}\right)"
                rf"\ln\frac{{1-t}}{{2}}")
        return " + ".join(parts) if parts else "0"


def _format_poly(p, latex):
    if not p:
        return "0"
    terms = []
    for i in sorted(p):
        c = p[i]
        if c == 0:
            continue
        if c.denominator == 1:
            cs = str(c.numerator)
        else:
            cs = (rf"\frac{{{c.numerator}}}{{{c.denominator}}}" if latex
                  else f"{c.numerator}/{c.denominator}")
        if i == 0:
            terms.append(cs)
        else:
            var = "t" if i == 1 else (f"t^{{{i}}}" if latex else f"t^{i}")
            if c == 1:
                terms.append(var)
            elif c == -1:
                terms.append(f"-{var}")
            else:
                sep = "" if latex else "*"
                terms.append(f"{cs}{sep}{var}")
    return " + ".join(terms).replace("+ -", "- ")


def _format_denominator(p1m, p1p, latex):
    bits = []
    if p1m:
        bits.append("(1-t)" if p1m == 1 else (f"(1-t)^{{{p1m}}}" if latex else f"(1-t)^{p1m}"))
    if p1p:
        bits.append("(1+t)" if p1p == 1 else (f"(1+t)^{{{p1p}}}" if latex else f"(1+t)^{p1p}"))
    return "".join(bits)


def _poly_divide_root(p, root):
    """Exact division of p(t) by (t - root) when p(root) = 0, else None."""
    if not p:
        return {}
    deg = max(p)
    rem = F0
    out = {}
    for i in range(deg, -1, -1):
        rem = rem * root + p.get(i, F0)
        if i > 0:
            out[i - 1] = rem
    if rem != 0:
        return None
    return _clean(out)


def _reduce_quotient(num, p1m, p1p):
    """Cancel (1-t) and (1+t) factors common to numerator and denominator."""
    while p1m > 0 and num:
        q = _poly_divide_root(num, F1)
        if q is None:
            break
        num = pscale(q, -1)       # (t - 1) = -(1 - t)
        p1m -= 1
    while p1p > 0 and num:
        q = _poly_divide_root(num, -F1)
        if q is None:
            break
        num = q
        p1p -= 1
    return num, p1m, p1p


# ---------------------------------------------------------------------------
# the assembler
# ---------------------------------------------------------------------------

def derive_green_closed_form(n, L):
    """Closed form of the Green function for even n, integer L, a = L(n+L-1).

    Raises NoClosedFormError outside the supported range (odd n or
    non-integer L: those forms carry inverse-trig terms outside this
    algebra).
    """
    if n % 2 != 0 or n < 2:
        raise NoClosedFormError(
            f"closed-form assembly covers even n >= 2 only, got n={n}")
    if int(L) != L:
        raise NoClosedFormError(f"closed-form assembly needs integer L, got {L}")
    L = int(L)
    if 2 * L <= -(n - 1):
        raise NoClosedFormError(f"L={L} lies below the root range for n={n}")
    J = n // 2
    lam = Fraction(2 * J - 1, 2)
    sub_top = L if L >= 0 else -1
    geg = gegenbauer_poly(lam, max(sub_top, 0))
    collector = Collector()

    if L == 0:
        _assemble_poisson_case(collector, n, J, lam)
    else:
        _assemble_via_order_swap(collector, n, J, lam, L, sub_top, geg)

    # correction sum: sum_{l <= top} 1/(a - l(n+l-1)) (lam+l)/lam C_l(t)
    a = Fraction(L * (n + L - 1))
    corr_top = L - 1 if L >= 1 else -1
    for l in range(corr_top + 1):
        gap = a - l * (n + l - 1)
        collector.add_rat((0, 0, 0), pscale(geg[l], (lam + l) / lam / gap))

    return _finalise(collector, n, L)


def _assemble_poisson_case(collector, n, J, lam):
    """L = 0 via the two-step route (radial antiderivative, then back integral).

    gamma(v) antidifferentiates (Sigma_n p_v - 1)/v; zeta(R)
    antidifferentiates R^{n-2} (gamma(R) - gamma(0)) through the
    kernel_power and kernel_log families; G = zeta(0) - zeta(1).
    """
    gamma = zonal_kernel_radial_antiderivative(lam)
    zeta = []
    for term in gamma:
        if isinstance(term, RatTerm):
            if term.uhalf >= 0 or (-term.uhalf) % 2 == 0:
                raise AssertionError("radial antiderivative must have odd 1/u powers")
            Jp = (-term.uhalf - 1) // 2
            by_j = {}
            for (i, j), c in term.num.items():
                by_j.setdefault(j, {})[i] = c
            for j, tpoly in by_j.items():
                for sub in kernel_power_antiderivative(j + n - 2, Jp):
                    zeta.append(_raise_tpow(_mul_tpoly(sub, tpoly), term.tpow))
        else:
            if term.kind != "B" or term.tpow != 0:
                raise AssertionError("unexpected log in the radial antiderivative")
            coef = bi_sub_v0(term.coef, 0)
            for sub in kernel_log_antiderivative(n - 2):
                zeta.append(_mul_tpoly(sub, coef))
    # subtract gamma(0) * v^{n-1}/(n-1)
    mono = {(0, n - 1): Fraction(1, n - 1)}
    for term in gamma:
        if isinstance(term, RatTerm):
            p0 = bi_sub_v0(term.num, 0)    # u -> 1 at v = 0
            if p0:
                zeta.append(RatTerm(pscale(pmul(uni_to_bi(p0), mono), -1),
                                    0, term.tpow))
        else:   # the B log contributes ln 2 at v = 0
            c0 = bi_sub_v0(term.coef, 0)
            if c0:
                zeta.append(LogTerm(pscale(pmul(uni_to_bi(c0), mono), -1), "2"))
    # G = zeta(0) - zeta(1)
    collector.add_expression_at(zeta, 0, 1)
    collector.add_expression_at(zeta, 1, -1)


def _assemble_via_order_swap(collector, n, J, lam, L, sub_top, geg):
    """L != 0: G_int = -(D1 - D2)/(n+2L-1) through single antiderivatives."""
    scale = Fraction(-1, n + 2 * L - 1)

    # ---- D2 = int_0^1 r^{n+L-2} S(r) dr -------------------------------------
    d2 = []
    d2.extend(kernel_power_antiderivative(n + L - 2, J))
    d2.extend(expr_scale(kernel_power_antiderivative(n + L, J), -1))
    for l in range(sub_top + 1):
        c = pscale(geg[l], -(lam + l) / lam * Fraction(1, n + L - 1 + l))
        d2.append(RatTerm(pmul(uni_to_bi(c), {(0, n + L - 1 + l): F1})))
    # G gains -scale * D2 = -scale * (antid2(1) - antid2(0))
    collector.add_expression_at(expr_scale(d2, -scale), 1, 1)
    collector.add_expression_at(expr_scale(d2, -scale), 0, -1)

    # ---- D1 = int_0^1 r^{-L-1} S(r) dr --------------------------------------
    if L < 0:
        d1 = []
        d1.extend(kernel_power_antiderivative(-L - 1, J))
        d1.extend(expr_scale(kernel_power_antiderivative(-L + 1, J), -1))
        collector.add_expression_at(expr_scale(d1, scale), 1, 1)
        collector.add_expression_at(expr_scale(d1, scale), 0, -1)
        return

    # L >= 1: substitute r = 1/w:
    # D1 = int_1^inf [(w^{n+L} - w^{n+L-2})/u(w)^{J+1/2} - sum_{l<=L} c_l w^{L-l-1}] dw
    d1 = []
    d1.extend(kernel_power_antiderivative(n + L, J))
    d1.extend(expr_scale(kernel_power_antiderivative(n + L - 2, J), -1))
    for l in range(sub_top + 1):
        c = pscale(geg[l], -(lam + l) / lam)
        if l < L:
            d1.append(RatTerm(pmul(uni_to_bi(pscale(c, Fraction(1, L - l))),
                                   {(0, L - l): F1})))
        else:
            d1.append(LogTerm(uni_to_bi(c), "V"))
    # lower endpoint w = 1: G gains -scale * antid1(1)
    collector.add_expression_at(expr_scale(d1, scale), 1, -1)
    # upper endpoint: exact finite part at w -> infinity
    asym = _Asym()
    for term in d1:
        if isinstance(term, RatTerm):
            asym.add_rat(term)
        else:
            asym.add_log(term)
    for m, slot in asym.powers.items():
        if _Asym.total_over_common(slot):
            raise AssertionError(
                f"divergent power w^{m} did not cancel (n={n}, L={L})")
    if _Asym.total_over_common(asym.logv):
        raise AssertionError(f"ln w coefficient did not cancel (n={n}, L={L})")
    for tp, poly in asym.const.items():
        collector.add_rat((2 * tp, tp, 0), pscale(poly, scale))
    for tp, poly in asym.const_log2.items():
        collector.add_log("L2", tp, pscale(poly, scale))


def _finalise(collector, n, L):
    """Assert surd cancellations, merge logs, reduce the rational quotient."""
    # surd log must vanish over its common denominator
    ls_num, _ = collector.log_total("LS")
    if ls_num:
        raise AssertionError(f"surd log did not cancel for n={n}, L={L}")
    # sqrt(2)*sqrt(1-t) rational atoms must vanish as a group
    surd = {}
    plain = {}
    for (e1m2, e1p, s2), poly in collector.rat.items():
        if s2 == 1 and e1m2 % 2 == 1:
            surd[(e1m2, e1p)] = padd(surd.get((e1m2, e1p), {}), poly)
        elif s2 == 0 and e1m2 % 2 == 0:
            plain[(e1m2, e1p)] = padd(plain.get((e1m2, e1p), {}), poly)
        else:
            raise AssertionError(f"mismatched surd parity in atom {(e1m2, e1p, s2)}")
    if surd:
        top1m = max(k[0] for k in surd)
        top1p = max(k[1] for k in surd)
        total = {}
        for (e1m2, e1p), poly in surd.items():
            lift = pmul(ppow(P_1MT, (top1m - e1m2) // 2), ppow(P_1PT, top1p - e1p))
            total = padd(total, pmul(poly, lift))
        if _clean(total):
            raise AssertionError(f"sqrt atoms did not cancel for n={n}, L={L}: {total}")
    # logs: ln(1-t) and ln 2 merge into ln((1-t)/2)
    l1_num, l1_tp = collector.log_total("L1MT")
    l2_num, l2_tp = collector.log_total("L2")
    top = max(l1_tp, l2_tp)
    l1_lift = pmul(l1_num, ppow({0: F1, 2: -F1}, top - l1_tp))
    l2_lift = pmul(l2_num, ppow({0: F1, 2: -F1}, top - l2_tp))
    if _clean(padd(l1_lift, l2_lift)):
        raise AssertionError(
            f"log coefficients do not merge to ln((1-t)/2) for n={n}, L={L}")
    logc, lp, lq = _reduce_quotient(l1_lift, top, top)
    if lp or lq:
        raise AssertionError(f"log coefficient is not polynomial for n={n}, L={L}")
    # rational part over the common denominator (1-t)^P (1+t)^Q
    P = max((k[0] // 2 for k in plain), default=0)
    Q = max((k[1] for k in plain), default=0)
    P = max(P, 0)
    Q = max(Q, 0)
    num = {}
    for (e1m2, e1p), poly in plain.items():
        lift = pmul(ppow(P_1MT, P - e1m2 // 2), ppow(P_1PT, Q - e1p))
        num = padd(num, pmul(poly, lift))
    num, P, Q = _reduce_quotient(num, P, Q)
    return GreenClosedForm(n=n, L=L, num=num, pow_1mt=P, pow_1pt=Q, log_coef=logc)


# ---------------------------------------------------------------------------
# spec-facing evaluation wrappers
# ---------------------------------------------------------------------------

def shifted_power_integral(k, J, t_shift, v):
    """Value + raw expression of int V^k/(T+V^2)^{J+1/2} dV at (T, V)."""
    if t_shift == 0:
        raise SphereDomainError("the shifted antiderivative requires T != 0")
    terms = shifted_power_antiderivative(k, J)
    return eval_shifted(terms, t_shift, v), terms


def kernel_power_integral(L, J, t, v):
    """Value + expression of int v^L/u^{J+1/2} dv at (t, v); |t| < 1 required."""
    if abs(t) >= 1.0:
        raise SphereDomainError("kernel power antiderivative needs |t| < 1")
    if 1.0 - 2.0 * t * v + v * v <= 0.0:
        raise SphereDomainError("u(t, v) must be positive")
    terms = kernel_power_antiderivative(L, J)
    return expr_eval(terms, t, v), terms


def kernel_log_integral(k, t, v):
    """Value + expression of int v^k ln(1-tv+sqrt(u)) dv at (t, v)."""
    u = 1.0 - 2.0 * t * v + v * v
    if u <= 0.0 or 1.0 - t * v + sqrt(u) <= 0.0 or v - t + sqrt(u) <= 0.0:
        raise SphereDomainError("log arguments must be positive")
    terms = kernel_log_antiderivative(k)
    return expr_eval(terms, t, v), terms


def assemble_green_eval(n, L, t):
    """Evaluate the assembled closed form; falls back to quadrature with a notice."""
    try:
        return derive_green_closed_form(n, L).eval(t)
    except NoClosedFormError as exc:
        warnings.warn(f"closed-form assembly unavailable ({exc}); "
                      "falling back to the double-integral backend", stacklevel=2)
        from .geometry import make_context
        from .green import green_eval_integral, parameter_from_root
        param = parameter_from_root(make_context(n), L)
        return green_eval_integral(param, t)
