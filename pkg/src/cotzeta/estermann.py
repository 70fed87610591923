"""Estermann zeta evaluation and the twisted-sum identity suite.

E(s, x, a) = sum_{n>=1} sigma_a(n) e(nx) n^(-s) for rational x = p/q, q > 1,
in three regimes: the Dirichlet series (Re s large), the finite Hurwitz
double sum (valid wherever the zeta factors avoid their poles), and closed
forms at nonpositive integer s expressed through the derivative cotangent
sums C(a, k, x).  The verifiers check the dual closed-form displays against
each other and against the Hurwitz double sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import exact, specfn, sums
from .errors import DomainError, PoleError
from .reports import VerifyResult
from .specfn import ComplexVal, PrecisionConfig, DEFAULT_PRECISION
from .sums import RationalArg, _e_twist


@dataclass(frozen=True)
class EstermannPoint:
    """Evaluation point (s, x, a) with x = p/q reduced, q > 1."""

    s: complex
    x: RationalArg
    a: complex

    def __post_init__(self):
        if self.x.q <= 1:
            raise DomainError("EstermannPoint needs a twist p/q with q > 1")


def estermann_series(pt: EstermannPoint, cfg: PrecisionConfig | None = None) -> ComplexVal:
    """Direct Dirichlet series, Re(s) > max(1, Re(a) + 1).

    Truncated at N with the divisor-sum tail bound

        sum_{n>N} sigma_alpha(n) n^(-sigma)
          <= N^(1-sigma)/(sigma-1) sum_{d<=N} d^(alpha-1) + N^(-sigma) sum_{d<=N} d^alpha
             + zeta(sigma) (N^(alpha-sigma+1)/(sigma-alpha-1) + N^(alpha-sigma)),

    folded into abs_err, so slow convergence shows up as an honest budget.
    """
    cfg = cfg or DEFAULT_PRECISION
    wp = cfg.working_digits + 10
    with mp.workdps(wp):
        sc = mp.mpc(pt.s)
        ac = mp.mpc(pt.a)
        sigma = sc.real
        alpha = ac.real
        if not (sigma > 1 and sigma > alpha + 1):
            raise DomainError("series regime needs Re(s) > max(1, Re(a) + 1)")
        target = mp.mpf(cfg.target_abs_err) / 2
        # Choose N from the leading N^(alpha+1-sigma) decay, capped by max_terms.
        decay = sigma - alpha - 1
        N = int(min(mp.mpf(cfg.max_terms),
                    mp.ceil((4 / target) ** (1 / decay)) + 32))
        N = max(N, 32)
        sig = specfn._sigma_prefix_mpc(ac, N)
        total = mp.mpc(0)
        magsum = mp.mpf(0)
        dsum_am1 = mp.mpf(0)
        dsum_a = mp.mpf(0)
        for n in range(1, N + 1):
            term = sig[n - 1] * _e_twist(n * pt.x.p, pt.x.q) * mp.mpf(n) ** (-sc)
            total += term
            magsum += abs(term)
            dsum_am1 += mp.mpf(n) ** (alpha - 1)
            dsum_a += mp.mpf(n) ** alpha
        zs = abs(specfn.riemann_zeta(sigma, cfg).val)
        Nf = mp.mpf(N)
        tail = (Nf ** (1 - sigma) / (sigma - 1) * dsum_am1
                + Nf ** (-sigma) * dsum_a
                + zs * (Nf ** (alpha - sigma + 1) / decay + Nf ** (alpha - sigma)))
        rounding = magsum * mp.mpf(10) ** (-wp + 3)
        return ComplexVal(total, tail + rounding)


def _zeta_factor(sval, m: int, q: int, cfg: PrecisionConfig) -> ComplexVal:
    """zeta(sval, m/q); at nonpositive integer order uses the exact Bernoulli
    polynomial closed form zeta(-j, x) = -B_{j+1}(x)/(j+1)."""
    if sval.imag == 0 and mp.isint(sval.real) and sval.real <= 0:
        j = int(-sval.real)
        v = -exact.poly_eval(exact.bernoulli_polynomial(j + 1), Fraction(m, q)) / (j + 1)
        fv = mp.mpf(v.numerator) / v.denominator
        return ComplexVal(fv, abs(fv) * mp.mpf(10) ** (-mp.mp.dps + 3))
    return specfn.hurwitz_zeta(sval, mp.mpf(m) / q, cfg)


def estermann_hurwitz(pt: EstermannPoint, cfg: PrecisionConfig | None = None) -> ComplexVal:
    """Finite Hurwitz double-sum representation:

        E(s, x, a) = q^(a-2s) sum_{m,n=1..q} e(mnx) zeta(s-a, m/q) zeta(s, n/q)

    valid for s != 1 and s != a + 1 (the two zeta poles)."""
    cfg = cfg or DEFAULT_PRECISION
    wp = cfg.working_digits + 10
    q = pt.x.q
    with mp.workdps(wp):
        sc = mp.mpc(pt.s)
        ac = mp.mpc(pt.a)
        if sc == 1:
            raise PoleError("estermann_hurwitz: pole at s = 1")
        if sc - ac == 1:
            raise PoleError("estermann_hurwitz: pole at s = a + 1")
        zl = [_zeta_factor(sc - ac, m, q, cfg) for m in range(1, q + 1)]
        zr = [_zeta_factor(sc, n, q, cfg) for n in range(1, q + 1)]
        total = ComplexVal(0, 0)
        for m in range(1, q + 1):
            for n in range(1, q + 1):
                tw = _e_twist(m * n * pt.x.p, q)
                total = total + zl[m - 1] * zr[n - 1] * ComplexVal(tw)
        pref = mp.mpc(q) ** (ac - 2 * sc)
        return ComplexVal(pref * total.val, abs(pref) * total.abs_err)


def estermann_nonpositive(k: int, x: RationalArg, a: int,
                          cfg: PrecisionConfig | None = None,
                          route: str = "primary") -> ComplexVal:
    """E(-k, x, a-k) for nonnegative integers a, k, via the closed forms

        primary:  C(a, k, x) + q^a zeta(-k) zeta(-a)
        dual:     C(k, a, x) + q^k zeta(-k) zeta(-a)

    Both hold for all a, k >= 0 with the Lerch-transcendent definition of C
    (the k = 0 instance of the primary display carries the full q^a factor;
    the constant -zeta(-a)/2 variant belongs to the bare cotangent sum).  The
    two routes cross-validate each other.
    """
    if k < 0 or a < 0:
        raise DomainError("estermann_nonpositive needs nonnegative integers")
    if x.q <= 1:
        raise DomainError("estermann_nonpositive needs q > 1")
    cfg = cfg or DEFAULT_PRECISION
    with mp.workdps(cfg.working_digits + 10):
        zz = exact.zeta_neg_int(k) * exact.zeta_neg_int(a)
        if route == "primary":
            c = sums.cotangent_sum_C(a, k, x, cfg)
            const = Fraction(x.q) ** a * zz
        elif route == "dual":
            c = sums.cotangent_sum_C(k, a, x, cfg)
            const = Fraction(x.q) ** k * zz
        else:
            raise DomainError(f"unknown route {route!r}")
        cv = mp.mpf(const.numerator) / const.denominator
        return ComplexVal(c.val + cv, c.abs_err + abs(cv) * mp.mpf(10) ** (-mp.mp.dps + 3))


def verify_thm44(k: int, x: RationalArg, a: int,
                 cfg: PrecisionConfig | None = None) -> VerifyResult:
    """Dual-route agreement for the nonpositive-integer Estermann values,
    with the continued Hurwitz double sum as an independent reference."""
    cfg = cfg or DEFAULT_PRECISION
    primary = estermann_nonpositive(k, x, a, cfg, route="primary")
    dual = estermann_nonpositive(k, x, a, cfg, route="dual")
    ref = estermann_hurwitz(EstermannPoint(s=-k, x=x, a=a - k), cfg)
    with mp.workdps(cfg.working_digits + 10):
        residual_routes = primary - dual
        residual_ref = primary - ref
        worst = residual_routes if residual_routes.mag() >= residual_ref.mag() \
            else residual_ref
        budget = float(worst.abs_err + mp.mpf(cfg.target_abs_err))
    return VerifyResult(
        "thm44", {"k": k, "a": a, "x": str(x)}, primary, dual, worst, budget,
        details={"hurwitz_reference": ref.to_json(),
                 "route_residual": residual_routes.to_json(),
                 "reference_residual": residual_ref.to_json()})


def verify_prop43(s: int, x: RationalArg, a: int,
                  cfg: PrecisionConfig | None = None) -> VerifyResult:
    """Both closed-form displays for E(-s, x, a-s) against the continued
    Hurwitz double sum (integer regime, where the Lerch closed forms apply)."""
    if s < 0 or a < 0:
        raise DomainError("verify_prop43 integer regime needs s, a >= 0")
    cfg = cfg or DEFAULT_PRECISION
    ref = estermann_hurwitz(EstermannPoint(s=-s, x=x, a=a - s), cfg)
    first = estermann_nonpositive(s, x, a, cfg, route="primary")
    second = estermann_nonpositive(s, x, a, cfg, route="dual")
    with mp.workdps(cfg.working_digits + 10):
        r1 = ref - first
        r2 = ref - second
        worst = r1 if r1.mag() >= r2.mag() else r2
        budget = float(worst.abs_err + mp.mpf(cfg.target_abs_err))
    return VerifyResult(
        "prop43", {"s": s, "a": a, "x": str(x)}, ref, first, worst, budget,
        details={"first_display_residual": r1.to_json(),
                 "second_display_residual": r2.to_json()})


def verify_lemma42(s, z, n: int, x: RationalArg,
                   cfg: PrecisionConfig | None = None) -> VerifyResult:
    """Distribution identity for the Lerch transcendent:

        sum_{m=0}^{q-1} e(mnx) zeta(s, z + m/q) = q^s Phi(s, qz, e(nx))

    checked with the direct (accelerated) Lerch series, Re(s) > 1, z real > 0."""
    cfg = cfg or DEFAULT_PRECISION
    q = x.q
    wp = cfg.working_digits + 10
    with mp.workdps(wp):
        sc = mp.mpc(s)
        if not sc.real > 1:
            raise DomainError("verify_lemma42 needs Re(s) > 1")
        zr = specfn._real_mpf(z)
        if not zr > 0:
            raise DomainError("verify_lemma42 needs real z > 0")
        lhs = ComplexVal(0, 0)
        for m in range(q):
            zeta_m = specfn.hurwitz_zeta(sc, zr + mp.mpf(m) / q, cfg)
            lhs = lhs + zeta_m * ComplexVal(_e_twist(m * n * x.p, q))
        lam = _e_twist(n * x.p, q)
        phi = specfn.lerch_phi(sc, q * zr, lam, cfg)
        rhs = ComplexVal(mp.mpc(q) ** sc) * phi
        residual = lhs - rhs
        budget = float(residual.abs_err + mp.mpf(cfg.target_abs_err))
    return VerifyResult("lemma42", {"s": str(s), "z": str(z), "n": n, "x": str(x)},
                        lhs, rhs, residual, budget)


def verify_lemma41(k: int, x: RationalArg,
                   cfg: PrecisionConfig | None = None) -> VerifyResult:
    """Apostol-Bernoulli boundary values against the cotangent closed form:

        B_1(0; e(x)) = cot(pi x)/(2i) - 1/2,
        B_k(0; e(x)) = k (2i)^(-k) cot^(k-1)(pi x)   for k > 1.

    The two sides use independent machinery (triangular recurrence versus
    cotangent-derivative polynomials)."""
    if k < 1:
        raise DomainError("verify_lemma41 needs k >= 1")
    if x.q <= 1:
        raise DomainError("verify_lemma41 needs a twist p/q with q > 1")
    cfg = cfg or DEFAULT_PRECISION
    with mp.workdps(cfg.working_digits + 10):
        lam = _e_twist(x.p, x.q)
        lhs = specfn.apostol_bernoulli(k, 0, lam, cfg)
        theta = mp.pi * x.p / mp.mpf(x.q)
        if k == 1:
            rhs_val = mp.cot(theta) / 2j - mp.mpf(1) / 2
            rhs = ComplexVal(rhs_val, abs(rhs_val) * mp.mpf(10) ** (-mp.mp.dps + 3))
        else:
            cd = specfn.cot_derivative(k - 1, theta, cfg)
            rhs = cd * ComplexVal(mp.mpf(k) / (2j) ** k)
        residual = lhs - rhs
        budget = float(residual.abs_err + mp.mpf(cfg.target_abs_err))
    return VerifyResult("lemma41", {"k": k, "x": str(x)}, lhs, rhs, residual, budget)


def verify_cor45(a: int, k: int, x: RationalArg,
                 cfg: PrecisionConfig | None = None) -> VerifyResult:
    """Difference law for the Lerch-weighted cotangent sums:

        C(a, k, x) - C(k, a, x) = (q^k - q^a) zeta(-k) zeta(-a)

    for all nonnegative integers a, k (both sides vanish when a = k, and the
    prediction vanishes whenever a zeta factor does)."""
    if a < 0 or k < 0:
        raise DomainError("verify_cor45 needs nonnegative integers")
    cfg = cfg or DEFAULT_PRECISION
    with mp.workdps(cfg.working_digits + 10):
        diff = sums.cotangent_sum_C(a, k, x, cfg) - sums.cotangent_sum_C(k, a, x, cfg)
        pred_q = ((Fraction(x.q) ** k - Fraction(x.q) ** a)
                  * exact.zeta_neg_int(k) * exact.zeta_neg_int(a))
        pred_v = mp.mpf(pred_q.numerator) / pred_q.denominator
        pred = ComplexVal(pred_v, abs(pred_v) * mp.mpf(10) ** (-mp.mp.dps + 3))
        residual = diff - pred
        budget = float(residual.abs_err + mp.mpf(cfg.target_abs_err))
    return VerifyResult("cor45", {"a": a, "k": k, "x": str(x)},
                        diff, pred, residual, budget)
