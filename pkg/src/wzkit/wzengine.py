"""Certificate verification, telescoping cross-checks, and discovery.

A problem packages a proper term F, recurrence coefficients a_j in the
shift variable, and a certificate R.  The claim is

    sum_j a_j(n) F(n+j, k)  =  G(n, k+1) - G(n, k),     G = R * F,

and dividing by F(n, k) turns it into a rational-function identity in
the shift quotients, decided exactly by cross-multiplication:

    sum_j a_j q_j  -  ( R(n, k+1) q_k - R(n, k) )  ==  0,

with q_j the j-fold shift quotient in n and q_k the shift quotient in k.

Verification is two-layered on purpose.  The formal identity above says
nothing pointwise at poles of R, and both constant-sum problems here
have R's pole sitting exactly one past the support of F (where F = 0,
so G is a 0*inf form).  The summed check therefore re-derives
``sum_k sum_j a_j F(n+j,k) = 0`` for each concrete n by direct exact
summation over the full support, never forming R*F at a pole; and the
prefix check exercises the telescoped form G(n,kappa+1) - G(n,0) on
every pole-free prefix.  Symbolic identity + per-n summation together
give the rigor the printed one-line telescoping argument skips.

Discovery is parameterized Gosper: H(k) = sum_j sigma_j F(n+j,k) with
unknown sigma has k-quotient (p(k+1)/p(k)) * (r(k)/s(k)) where p is
sigma-linear; Gosper-normalizing r/s and solving

    Z A(k) x(k+1) - B(k-1) x(k) = C(k) p(k)

as a homogeneous linear system over the rational-function field in the
sigma_j and the coefficients of x yields G = (B(k-1) x(k) / C(k)) * u(k)
and hence R.  The returned problem always re-passes verify_certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping

from .gosper import UPoly, degree_bound, gosper_normal, nullspace
from .hyperterm import HyperTerm, SupportBound, lower_support, upper_support
from .symalg import MultiPoly, RationalFunction


@dataclass(frozen=True, eq=False)
class WZProblem:
    """A term, a recurrence sum_j a_j F(n+j, k), and a certificate R."""

    problem_id: str
    term: HyperTerm
    shift_var: str
    sum_var: str
    coeffs: tuple[RationalFunction, ...]
    certificate: RationalFunction
    sum_lower: int = 0
    base_case: tuple[int, Fraction] | None = None
    errata: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(eq=False)
class CertCheck:
    status: bool
    residual: RationalFunction
    lower_boundary_ok: bool
    upper_bounds: tuple[SupportBound, ...]


@dataclass(eq=False)
class ProofReport:
    problem_id: str
    cert: CertCheck
    upper_boundary_ok: bool
    base_ok: bool | None
    base_case: tuple[int, Fraction] | None
    base_actual: Fraction | None
    range_checked: tuple[int, int]
    summed_failures: list[int]
    failed_stage: str | None
    conclusion: str | None
    errata: tuple[str, ...]


# ---------------------------------------------------------------------------
# symbolic layer


def shift_quotients(p: WZProblem) -> list[RationalFunction]:
    """q_j = F(n+j, k) / F(n, k) for j = 0..order, as rational functions."""
    q1 = p.term.shift_quotient(p.shift_var)
    out = [RationalFunction.const(1)]
    for j in range(p.order):
        out.append(out[-1] * q1.shifted(p.shift_var, j))
    return out


def verify_certificate(p: WZProblem) -> CertCheck:
    """Decide the certificate identity exactly; no numerics involved."""
    qs = shift_quotients(p)
    residual = RationalFunction.const(0)
    for a, q in zip(p.coeffs, qs):
        residual = residual + a * q
    qk = p.term.shift_quotient(p.sum_var)
    r = p.certificate
    residual = residual - (r.shifted(p.sum_var, 1) * qk - r)
    num_low = r.num.subst_int(p.sum_var, p.sum_lower)
    den_low = r.den.subst_int(p.sum_var, p.sum_lower)
    lower_ok = num_low.is_zero() and not den_low.is_zero()
    uppers = tuple(b for b in p.term.support_bounds(p.sum_var) if b.direction == "upper")
    return CertCheck(
        status=residual.is_zero(),
        residual=residual,
        lower_boundary_ok=lower_ok,
        upper_bounds=uppers,
    )


# ---------------------------------------------------------------------------
# numeric layers


def _coeff_values(p: WZProblem, point: Mapping[str, int]) -> list[Fraction]:
    return [a.eval(point) for a in p.coeffs]


def summed_recurrence_value(p: WZProblem, n: int,
                            extra: Mapping[str, int] | None = None) -> Fraction:
    """sum_k sum_j a_j(n) F(n+j, k) over the full support (should be 0).

    Never forms R*F, so certificate poles inside or at the edge of the
    support are irrelevant here.  Requires every shifted term to have a
    finite upper support bound in the summation variable.
    """
    base = dict(extra or {})
    base[p.shift_var] = n
    uppers, lowers = [], []
    for j in range(p.order + 1):
        pt = dict(base, **{p.shift_var: n + j})
        u = upper_support(p.term, p.sum_var, pt)
        if u is None:
            raise ValueError(
                f"term of {p.problem_id} has no finite upper support in {p.sum_var}")
        uppers.append(u)
        low = lower_support(p.term, p.sum_var, pt)
        lowers.append(p.sum_lower if low is None else low)
    a_vals = _coeff_values(p, base)
    total = Fraction(0)
    for k in range(min(lowers), max(uppers) + 1):
        for j in range(p.order + 1):
            pt = dict(base, **{p.shift_var: n + j, p.sum_var: k})
            total += a_vals[j] * p.term.eval(pt)
    return total


def summed_recurrence_check(p: WZProblem, n: int,
                            extra: Mapping[str, int] | None = None) -> bool:
    return summed_recurrence_value(p, n, extra) == 0


def telescope_first_mismatch(p: WZProblem, n: int,
                             extra: Mapping[str, int] | None = None,
                             kappa_cap: int = 48
                             ) -> tuple[int, Fraction, Fraction] | None:
    """First prefix where the telescoped form disagrees, or None.

    Checks sum_{k=lower}^{kappa} sum_j a_j F(n+j,k) = G(n,kappa+1) - G(n,lower)
    over every pole-free prefix: kappa+1 stays strictly below the first
    zero of R's denominator in the summation variable.  G values use
    absorb semantics, so a pole inside the checked region raises rather
    than being silently defined away.
    """
    base = dict(extra or {})
    base[p.shift_var] = n
    u = upper_support(p.term, p.sum_var, base)
    limit = kappa_cap if u is None else max(u + p.order + 2, p.sum_lower)
    first_pole = None
    for k in range(p.sum_lower, limit + 2):
        if p.certificate.den.eval(dict(base, **{p.sum_var: k})) == 0:
            first_pole = k
            break
    kappa_max = limit if first_pole is None else first_pole - 2
    g_term = p.term.absorb(p.certificate)
    if kappa_max >= p.sum_lower - 1:
        g_low = g_term.eval(dict(base, **{p.sum_var: p.sum_lower}))
    a_vals = _coeff_values(p, base)
    lhs = Fraction(0)
    for kappa in range(p.sum_lower - 1, kappa_max + 1):
        if kappa >= p.sum_lower:
            for j in range(p.order + 1):
                pt = dict(base, **{p.shift_var: n + j, p.sum_var: kappa})
                lhs += a_vals[j] * p.term.eval(pt)
        rhs = g_term.eval(dict(base, **{p.sum_var: kappa + 1})) - g_low
        if lhs != rhs:
            return kappa, lhs, rhs
    return None


def telescope_prefix_check(p: WZProblem, n: int,
                           extra: Mapping[str, int] | None = None,
                           kappa_cap: int = 48) -> bool:
    return telescope_first_mismatch(p, n, extra, kappa_cap) is None


def pointwise_witness(p: WZProblem, n_lo: int, n_hi: int
                      ) -> tuple[int, int, Fraction, Fraction] | None:
    """First integer point where the pointwise recurrence breaks.

    Scans pole-free (n, k) with k+1 inside the pole-free zone and
    returns (n, k, recurrence side, telescoped side) for the first
    mismatch; None when the recurrence holds on the whole grid.  Only
    problems whose term has no leftover symbolic variables are scanned.
    """
    if set(p.term.variables) - {p.shift_var, p.sum_var}:
        return None
    for n in range(n_lo, n_hi + 1):
        base = {p.shift_var: n}
        u = upper_support(p.term, p.sum_var, base)
        hi = (u if u is not None else n + 2) + p.order + 1
        a_vals = _coeff_values(p, base)
        g_term = p.term.absorb(p.certificate)
        for k in range(p.sum_lower, hi + 1):
            den_here = p.certificate.den.eval(dict(base, **{p.sum_var: k}))
            den_next = p.certificate.den.eval(dict(base, **{p.sum_var: k + 1}))
            if den_here == 0 or den_next == 0:
                continue
            lhs = Fraction(0)
            for j in range(p.order + 1):
                pt = dict(base, **{p.shift_var: n + j, p.sum_var: k})
                lhs += a_vals[j] * p.term.eval(pt)
            rhs = (g_term.eval(dict(base, **{p.sum_var: k + 1}))
                   - g_term.eval(dict(base, **{p.sum_var: k})))
            if lhs != rhs:
                return n, k, lhs, rhs
    return None


def sum_over_support(p: WZProblem, n: int,
                     extra: Mapping[str, int] | None = None) -> Fraction:
    """S(n) = sum_k F(n, k) over the term's support."""
    pt = dict(extra or {})
    pt[p.shift_var] = n
    u = upper_support(p.term, p.sum_var, pt)
    if u is None:
        raise ValueError(f"term of {p.problem_id} has no finite upper support")
    low = lower_support(p.term, p.sum_var, pt)
    low = p.sum_lower if low is None else low
    return sum((p.term.eval(dict(pt, **{p.sum_var: k})) for k in range(low, u + 1)),
               Fraction(0))


# ---------------------------------------------------------------------------
# proof assembly


def _upper_boundary_ok(p: WZProblem, cert: CertCheck) -> bool:
    """Terms vanish beyond a linear bound and R is finite just past it.

    The combined bound over the shifted terms F(n+j, .) is the base
    bound pushed by the shifts; R's denominator substituted at
    (bound + 1) must not vanish identically, which makes
    G(n, bound + 1) an honest finite * 0 = 0.
    """
    if not cert.upper_bounds:
        return False
    bound = cert.upper_bounds[0].bound
    step = bound.coeff(p.shift_var)
    combined = bound.shifted(p.shift_var, p.order) if step > 0 else bound
    past = (combined + 1).to_poly()
    den_past = p.certificate.den.subst(p.sum_var, past)
    if den_past.is_zero():
        return False
    # F itself must already vanish at combined+1 (true when the shift
    # only pushes the bound up)
    return (combined + 1 - bound).const > 0 if combined is not bound else True


def prove_constant_sum(p: WZProblem, rng: tuple[int, int]) -> ProofReport:
    """Assemble the full constant-sum proof over ``rng`` of the shift variable."""
    cert = verify_certificate(p)
    upper_ok = _upper_boundary_ok(p, cert)
    base_ok: bool | None = None
    base_actual: Fraction | None = None
    if p.base_case is not None:
        base_n, base_val = p.base_case
        base_actual = sum_over_support(p, base_n)
        base_ok = base_actual == base_val
    lo, hi = rng
    summed_failures: list[int] = []
    if cert.status:
        summed_failures = [n for n in range(lo, hi + 1)
                           if not summed_recurrence_check(p, n)]
    failed = None
    if not cert.status:
        failed = "certificate"
    elif not cert.lower_boundary_ok:
        failed = "lower-boundary"
    elif not upper_ok:
        failed = "upper-boundary"
    elif base_ok is False:
        failed = "base-case"
    elif summed_failures:
        failed = "summed-recurrence"
    conclusion = None
    if failed is None and p.base_case is not None:
        conclusion = (f"S({p.shift_var}) = {p.base_case[1]} for "
                      f"{p.shift_var} in [{lo}, {hi}]")
    return ProofReport(
        problem_id=p.problem_id,
        cert=cert,
        upper_boundary_ok=upper_ok,
        base_ok=base_ok,
        base_case=p.base_case,
        base_actual=base_actual,
        range_checked=rng,
        summed_failures=summed_failures,
        failed_stage=failed,
        conclusion=conclusion,
        errata=p.errata,
    )


# ---------------------------------------------------------------------------
# mutation sensitivity


def _mutation_sites(p: WZProblem) -> list[tuple[str, int, tuple[int, ...]]]:
    sites = []
    for part, poly in (("cert_num", p.certificate.num), ("cert_den", p.certificate.den)):
        for exp in poly.terms:
            sites.append((part, -1, exp))
    for j, a in enumerate(p.coeffs):
        for part, poly in (("coeff_num", a.num), ("coeff_den", a.den)):
            for exp in poly.terms:
                sites.append((part, j, exp))
    return sites


def _perturb(poly: MultiPoly, exp: tuple[int, ...], delta: int) -> MultiPoly:
    terms = dict(poly.terms)
    terms[exp] = terms.get(exp, Fraction(0)) + delta
    return MultiPoly(poly.vars, terms)


def mutate_problem(p: WZProblem, rng: random.Random) -> WZProblem:
    """One random +-1 perturbation of an integer constant in R or the coefficients.

    Re-samples if the perturbation would make a denominator identically
    zero (such a mutant is not a well-formed problem at all).
    """
    sites = _mutation_sites(p)
    while True:
        part, j, exp = rng.choice(sites)
        delta = rng.choice((1, -1))
        try:
            if part == "cert_num":
                cert = RationalFunction(_perturb(p.certificate.num, exp, delta),
                                        p.certificate.den)
                return replace(p, certificate=cert)
            if part == "cert_den":
                cert = RationalFunction(p.certificate.num,
                                        _perturb(p.certificate.den, exp, delta))
                return replace(p, certificate=cert)
            coeffs = list(p.coeffs)
            a = coeffs[j]
            if part == "coeff_num":
                coeffs[j] = RationalFunction(_perturb(a.num, exp, delta), a.den)
            else:
                coeffs[j] = RationalFunction(a.num, _perturb(a.den, exp, delta))
            return replace(p, coeffs=tuple(coeffs))
        except ZeroDivisionError:
            continue


def mutation_check(p: WZProblem, count: int = 20, seed: int = 0) -> list[bool]:
    """Returns one flag per mutant: True means the mutant certificate fails."""
    rng = random.Random(seed)
    return [not verify_certificate(mutate_problem(p, rng)).status
            for _ in range(count)]


# ---------------------------------------------------------------------------
# discovery (parameterized Gosper)


def discover_certificate(term: HyperTerm, shift_var: str, sum_var: str,
                         order: int,
                         problem_id: str = "discovered") -> WZProblem | None:
    """Find (a_0..a_J, R) of the given order, or None if provably none exists.

    The result is normalized so the leading coefficient a_J is 1 and is
    re-verified through ``verify_certificate`` before being returned.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    q1 = term.shift_quotient(shift_var)
    rhos = [RationalFunction.const(1)]
    for j in range(order):
        rhos.append(rhos[-1] * q1.shifted(shift_var, j))
    beta = MultiPoly.const(1)
    for rho in rhos:
        beta = beta * rho.den
    alphas = []
    for j, rho in enumerate(rhos):
        other = MultiPoly.const(1)
        for i, rho2 in enumerate(rhos):
            if i != j:
                other = other * rho2.den
        alphas.append(rho.num * other)

    qk = term.shift_quotient(sum_var)
    r_up = UPoly.from_multipoly(qk.num * beta, sum_var)
    s_up = UPoly.from_multipoly(qk.den * beta.shifted(sum_var, 1), sum_var)
    a_np, b_np, c_np = gosper_normal(r_up, s_up)
    b_down = b_np.shifted(-1)
    rhs_degree = c_np.degree + max(alpha.degree(sum_var) for alpha in alphas)
    d = degree_bound(a_np, b_down, rhs_degree)
    if d is None:
        return None

    # multipliers of each unknown inside A x(k+1) - B(k-1) x(k) - C p(k)
    x_shift = UPoly(sum_var, [RationalFunction.const(1), RationalFunction.const(1)])
    multipliers: list[UPoly] = []
    kp_shift = UPoly.one(sum_var)
    for j in range(d + 1):
        multipliers.append(a_np * kp_shift - b_down * UPoly.monomial(sum_var, j))
        kp_shift = kp_shift * x_shift
    for alpha in alphas:
        prod = c_np * UPoly.from_multipoly(alpha, sum_var)
        multipliers.append(UPoly(sum_var, [(-c) for c in prod.coeffs]))

    n_rows = max(m.degree for m in multipliers) + 1
    matrix = [[m.coeff(i) for m in multipliers] for i in range(n_rows)]
    basis = nullspace(matrix)
    sigma_at = d + 1
    chosen = None
    for vec in basis:
        if not vec[sigma_at + order].is_zero():
            chosen = vec
            break
    if chosen is None:
        for vec in basis:
            if any(not vec[sigma_at + j].is_zero() for j in range(order + 1)):
                chosen = vec
                break
    if chosen is None:
        return None
    lead = next(vec_c for vec_c in reversed(chosen[sigma_at:]) if not vec_c.is_zero())
    chosen = [(c / lead).reduced() for c in chosen]

    x_up = UPoly(sum_var, chosen[:sigma_at])
    sigmas = tuple(chosen[sigma_at + j] for j in range(order + 1))
    r_cert = ((b_down * x_up).to_rf()
              / (c_np.to_rf() * RationalFunction.from_poly(beta))).reduced()
    problem = WZProblem(problem_id, term, shift_var, sum_var, sigmas, r_cert)
    if not verify_certificate(problem).status:
        raise RuntimeError(
            f"internal error: discovered certificate for {problem_id} failed re-verification")
    return problem
