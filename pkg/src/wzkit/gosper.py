"""Gosper machinery for order-J certificate discovery.

Everything here works over the field of rational functions in the
parameters (typically just the shift variable), with the summation
variable as the polynomial indeterminate.  The pieces:

* ``UPoly`` -- dense univariate polynomials with ``RationalFunction``
  coefficients, enough ring/Euclid structure for the normal form.
* ``shift_candidates`` -- the nonnegative integer shifts ``g`` with
  ``gcd(a(k), b(k+g)) != 1``, found exactly: the resultant
  ``Res_k(a(k), b(k+h))`` is computed symbolically (fraction-free
  Bareiss over integer polynomials in the parameters and ``h``), a
  nonzero rational slice of it bounds the integer roots, and every
  candidate is confirmed by an actual gcd.
* ``gosper_normal`` -- ``r/s = Z * (A/B) * (C(k+1)/C(k))`` with
  ``gcd(A(k), B(k+g)) = 1`` for every integer ``g >= 0``; ``Z`` is
  folded into ``A``.
* ``degree_bound`` -- the standard degree analysis of the key equation
  ``A(k) x(k+1) - B(k-1) x(k) = rhs(k)``; in the leading-term
  cancellation case both candidate degrees are kept and the maximum
  wins.
* ``nullspace`` -- exact kernel of a homogeneous system over the
  rational-function field.
"""

from __future__ import annotations

from fractions import Fraction

from .symalg import MultiPoly, RationalFunction

_H = "_h"  # resultant shift indeterminate; underscore keeps it out of user namespaces


class UPoly:
    """Dense univariate polynomial in ``var`` over rational-function coefficients."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: list[RationalFunction]):
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        self.var = var
        self.coeffs = [c.reduced() for c in coeffs]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(var: str) -> "UPoly":
        return UPoly(var, [])

    @staticmethod
    def one(var: str) -> "UPoly":
        return UPoly(var, [RationalFunction.const(1)])

    @staticmethod
    def monomial(var: str, power: int, coeff=None) -> "UPoly":
        c = coeff if coeff is not None else RationalFunction.const(1)
        return UPoly(var, [RationalFunction.const(0)] * power + [c])

    @staticmethod
    def from_multipoly(p: MultiPoly, var: str) -> "UPoly":
        cm = p.coeff_map(var)
        if not cm:
            return UPoly.zero(var)
        out = [RationalFunction.const(0)] * (max(cm) + 1)
        for power, coeff in cm.items():
            out[power] = RationalFunction.from_poly(coeff)
        return UPoly(var, out)

    # -- basics ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> RationalFunction:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> RationalFunction:
        return self.coeffs[i] if 0 <= i <= self.degree else RationalFunction.const(0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.var, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.var, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __mul__(self, other: "UPoly") -> "UPoly":
        if self.is_zero() or other.is_zero():
            return UPoly.zero(self.var)
        out = [RationalFunction.const(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(self.var, out)

    def scale(self, c: RationalFunction) -> "UPoly":
        return UPoly(self.var, [x * c for x in self.coeffs])

    def monic(self) -> "UPoly":
        return self.scale(RationalFunction.const(1) / self.lc)

    def shifted(self, offset: int) -> "UPoly":
        """Substitute ``var -> var + offset``."""
        if offset == 0 or self.is_zero():
            return self
        # Horner in (var + offset)
        out = UPoly.zero(self.var)
        x = UPoly(self.var, [RationalFunction.const(offset), RationalFunction.const(1)])
        for c in reversed(self.coeffs):
            out = out * x + UPoly(self.var, [c])
        return out

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [RationalFunction.const(0)] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)

        def deg(cs):
            while cs and cs[-1].is_zero():
                cs.pop()
            return len(cs) - 1

        while deg(r) >= other.degree:
            d = len(r) - 1
            t = (r[-1] / other.lc).reduced()
            q[d - other.degree] = t
            for i, c in enumerate(other.coeffs):
                r[d - other.degree + i] = (r[d - other.degree + i] - t * c).reduced()
        return UPoly(self.var, q), UPoly(self.var, r)

    def quo(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def gcd(self, other: "UPoly") -> "UPoly":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def to_rf(self) -> RationalFunction:
        """Collapse back into a single rational function."""
        x = RationalFunction.var(self.var)
        out = RationalFunction.const(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(
            f"({c})*{self.var}^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero())


# ---------------------------------------------------------------------------
# resultant-based shift detection


def _det_bareiss(mat: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant; every division is exact by Bareiss' theorem."""
    n = len(mat)
    if n == 0:
        return MultiPoly.const(1)
    m = [row[:] for row in mat]
    prev = MultiPoly.const(1)
    sign = 1
    for i in range(n - 1):
        if m[i][i].is_zero():
            for r in range(i + 1, n):
                if not m[r][i].is_zero():
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero()
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[i][i] * m[r][c] - m[r][i] * m[i][c]).divexact(prev)
            m[r][i] = MultiPoly.zero()
        prev = m[i][i]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def _clear_denominators(p: UPoly) -> list[MultiPoly]:
    """Coefficients of ``p`` scaled to polynomials (common denominator dropped)."""
    den = MultiPoly.const(1)
    for c in p.coeffs:
        den = den * c.den
    out = []
    for i, c in enumerate(p.coeffs):
        scaled = c.num * den.divexact(c.den)
        out.append(scaled)
    return out


def _sylvester_resultant_shifted(a: UPoly, b: UPoly) -> MultiPoly:
    """``Res_k(a(k), b(k+h))`` as a polynomial in the parameters and ``h``."""
    ca = _clear_denominators(a)
    cb = _clear_denominators(b)
    da, db = len(ca) - 1, len(cb) - 1
    # b(k + h): expand each (k+h)^j
    h = MultiPoly.var(_H)
    kh_pow: list[dict[int, MultiPoly]] = [{0: MultiPoly.const(1)}]
    for j in range(1, db + 1):
        prev = kh_pow[-1]
        cur: dict[int, MultiPoly] = {}
        for deg_k, coeff in prev.items():  # multiply by (k + h)
            cur[deg_k + 1] = cur.get(deg_k + 1, MultiPoly.zero()) + coeff
            cur[deg_k] = cur.get(deg_k, MultiPoly.zero()) + coeff * h
        kh_pow.append(cur)
    cbh = [MultiPoly.zero() for _ in range(db + 1)]
    for j, coeff in enumerate(cb):
        for deg_k, kc in kh_pow[j].items():
            cbh[deg_k] = cbh[deg_k] + coeff * kc
    # Sylvester matrix of (ca, cbh), size da + db
    n = da + db
    rows: list[list[MultiPoly]] = []
    for i in range(db):  # rows of a
        row = [MultiPoly.zero()] * n
        for j, c in enumerate(reversed(ca)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):  # rows of b(k+h)
        row = [MultiPoly.zero()] * n
        for j, c in enumerate(reversed(cbh)):
            row[i + j] = c
        rows.append(row)
    return _det_bareiss(rows)


def shift_candidates(a: UPoly, b: UPoly, limit: int = 100_000) -> list[int]:
    """Nonnegative integers ``g`` with ``gcd(a(k), b(k+g))`` nontrivial."""
    if a.degree < 1 or b.degree < 1:
        return []
    res = _sylvester_resultant_shifted(a, b)
    if res.is_zero():
        raise ValueError("degenerate resultant (inputs share a factor for all shifts)")
    # slice away the parameters: any specialization keeping the slice nonzero
    # yields a superset of the integer roots in h
    params = [v for v in res.vars if v != _H]
    phi = None
    for base in range(0, 64):
        cand = res
        for i, v in enumerate(params):
            cand = cand.subst_int(v, base + 7 * i + 1)
        if not cand.is_zero():
            phi = cand
            break
    if phi is None:
        raise ValueError("could not find a nonzero resultant slice")
    coeffs: dict[int, Fraction] = {e[0] if phi.vars else 0: c for e, c in phi.terms.items()}
    degree = max(coeffs)
    lead = abs(coeffs[degree])
    cauchy = 1 + max(abs(c) / lead for c in coeffs.values())
    bound = min(int(cauchy) + 1, limit)

    def phi_at(g: int) -> Fraction:
        return sum(c * g**e for e, c in coeffs.items())

    out = []
    for g in range(0, bound + 1):
        if phi_at(g) == 0 and a.gcd(b.shifted(g)).degree > 0:
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# normal form, degree bound, linear algebra


def gosper_normal(r: UPoly, s: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Write ``r/s = Z * (A(k)/B(k)) * (C(k+1)/C(k))``.

    Returns ``(Z*A, B, C)`` with ``A, B, C`` monic and
    ``gcd(A(k), B(k+g)) = 1`` for all integers ``g >= 0``.
    """
    z = (r.lc / s.lc).reduced()
    a, b = r.monic(), s.monic()
    c = UPoly.one(r.var)
    for g in shift_candidates(a, b):
        d = a.gcd(b.shifted(g))
        if d.degree > 0:
            a = a.quo(d)
            b = b.quo(d.shifted(-g))
            for j in range(1, g + 1):
                c = c * d.shifted(-j)
    return a.scale(z), b, c


def degree_bound(a: UPoly, b_down: UPoly, rhs_degree: int) -> int | None:
    """Degree bound for ``x`` in ``a(k) x(k+1) - b_down(k) x(k) = rhs(k)``.

    ``b_down`` is ``B`` already shifted down by one.  Returns None when
    no nonnegative degree is possible (the honest no-solution case).
    """
    n, m, k = a.degree, b_down.degree, rhs_degree
    candidates: set[int] = set()
    if n != m or not (a.lc - b_down.lc).is_zero():
        candidates.add(k - max(n, m))
    elif n == 0:
        candidates.update((k - n + 1, 0))
    else:
        candidates.add(k - n + 1)
        extra = ((b_down.coeff(n - 1) - a.coeff(n - 1)) / a.lc).reduced()
        if extra.is_const():
            val = extra.as_fraction()
            if val.denominator == 1:
                candidates.add(int(val))
    valid = [d for d in candidates if d >= 0]
    return max(valid) if valid else None


def nullspace(matrix: list[list[RationalFunction]]) -> list[list[RationalFunction]]:
    """Basis of the kernel of a homogeneous system over the RF field."""
    if not matrix:
        return []
    rows = [list(r) for r in matrix]
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(rows)):
            if not rows[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = RationalFunction.const(1) / rows[rank][col]
        rows[rank] = [(x * inv).reduced() for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [(x - f * y).reduced() for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [RationalFunction.const(0)] * ncols
        vec[f] = RationalFunction.const(1)
        for i, p in enumerate(pivots):
            vec[p] = (-rows[i][f]).reduced()
        basis.append(vec)
    return basis
