"""Exact rational-arithmetic oscillator perturbation series.

Ground truth for every floating-point method in this package.  The n-th
order correction is written as psi_n = f_n * psi0 with f_n a polynomial;
substituting into the hierarchy equation and dividing out psi0 turns each
order into the exact polynomial identity

    -f_n'' + 2 x f_n' = E_n - Vt_n,

where Vt_n = V1 * f_{n-1} - sum_{i=1}^{n-1} E_i f_{n-i} is the effective
perturbation built from lower orders.  The solvability condition fixes
E_n = <Vt_n> (Gaussian expectation), the remaining coefficients follow from
a triangular top-down solve, and the constant term is pinned by the
orthogonality <f_n> = 0.  Everything is a fractions.Fraction: no rounding
happens anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParityError

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RationalPoly:
    """Even-parity polynomial with exact rational coefficients.

    coeffs[k] multiplies x^(2k); odd powers are structurally absent.
    Trailing zero coefficients are trimmed on construction.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def from_terms(cls, terms):
        """Build from a {degree: coefficient} mapping (degrees even)."""
        if any(d % 2 or d < 0 for d in terms):
            raise ParityError(f"odd or negative power in {sorted(terms)}")
        kmax = max((d // 2 for d in terms), default=-1)
        cs = [Fraction(0)] * (kmax + 1)
        for d, c in terms.items():
            cs[d // 2] += Fraction(c)
        return cls(tuple(cs))

    @property
    def degree(self):
        """Degree in x (-1 for the zero polynomial)."""
        return 2 * (len(self.coeffs) - 1) if self.coeffs else -1

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly(tuple(
            c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)))

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, RationalPoly):
            if self.is_zero() or other.is_zero():
                return RationalPoly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RationalPoly(tuple(out))
        s = Fraction(other)
        return RationalPoly(tuple(s * c for c in self.coeffs))

    __rmul__ = __mul__

    def __call__(self, x):
        """Evaluate at a float (Horner in x^2)."""
        x2 = x * x
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x2 + float(c)
        return acc

    def hierarchy_image(self):
        """The polynomial -p'' + 2x p' (even-parity preserving map)."""
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            out[k] += 4 * k * c                       # from 2x p'
            if k >= 1:
                out[k - 1] -= 2 * k * (2 * k - 1) * c  # from -p''
        return RationalPoly(tuple(out))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = str(abs(c))
            if k == 0:
                body = mag
            else:
                var = f"x^{2 * k}"
                body = var if abs(c) == 1 else f"{mag} {var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)


@dataclass(frozen=True)
class OrderRecord:
    """One order of the series: energy, wavefunction factor, source term."""

    n: int
    energy: Fraction
    f: RationalPoly       # psi_n = f * psi0
    v_eff: RationalPoly   # effective perturbation driving this order


@dataclass(frozen=True)
class PerturbationSeries:
    v1: RationalPoly
    orders: tuple

    @property
    def max_order(self):
        return len(self.orders)

    def record(self, n) -> OrderRecord:
        if not 1 <= n <= len(self.orders):
            raise ValueError(f"order {n} not computed (have {len(self.orders)})")
        return self.orders[n - 1]

    def energy(self, n) -> Fraction:
        return self.record(n).energy

    def f(self, n) -> RationalPoly:
        if n == 0:
            return RationalPoly((Fraction(1),))
        return self.record(n).f

    def v_eff(self, n) -> RationalPoly:
        return self.record(n).v_eff

    def energy_lines(self):
        """Exact rational text, one 'En = p/q' line per order."""
        return [f"E{r.n} = {r.energy}" for r in self.orders]


def gaussian_moment(p: RationalPoly) -> Fraction:
    """<p> = int_0^inf p psi0^2 / int_0^inf psi0^2, exactly.

    Uses <x^(2k)> = (2k-1)!!/2^k for the half-line Gaussian weight.
    """
    total = Fraction(0)
    moment = Fraction(1)
    for k, c in enumerate(p.coeffs):
        if k > 0:
            moment *= (2 * k - 1) * _HALF
        total += c * moment
    return total


def effective_perturbation(n: int, v1: RationalPoly, series_so_far) -> RationalPoly:
    """Vt_n = V1 * f_{n-1} - sum_{i=1}^{n-1} E_i f_{n-i}.

    series_so_far: sequence of OrderRecord for orders 1..n-1.
    """
    if len(series_so_far) < n - 1:
        raise ValueError(f"need orders < {n} before computing Vt_{n}")
    f_prev = series_so_far[n - 2].f if n >= 2 else RationalPoly((Fraction(1),))
    vt = v1 * f_prev
    for i in range(1, n):
        vt = vt - series_so_far[i - 1].energy * _f_of(series_so_far, n - i)
    return vt


def _f_of(records, m):
    return RationalPoly((Fraction(1),)) if m == 0 else records[m - 1].f


def solve_order(vt: RationalPoly):
    """Solve -f'' + 2x f' = E - Vt for (E exact, f RationalPoly).

    E = <Vt> by the solvability condition.  Writing f = sum c_{2k} x^(2k),
    the x^(2k) coefficient of -f'' + 2x f' is
    4k c_{2k} - (2k+2)(2k+1) c_{2k+2}, so the coefficients follow top-down
    (diagonal entry 4k never vanishes for k >= 1); the k = 0 row is the
    solvability condition and must close exactly.  The free constant is
    fixed by orthogonality <f> = 0.
    """
    energy = gaussian_moment(vt)
    rhs = RationalPoly((energy,)) - vt
    if rhs.is_zero():
        return energy, RationalPoly.zero()
    kmax = len(rhs.coeffs) - 1
    c = [Fraction(0)] * (kmax + 1)
    for k in range(kmax, 0, -1):
        above = (2 * k + 2) * (2 * k + 1) * c[k + 1] if k + 1 <= kmax else 0
        c[k] = (rhs.coeffs[k] + above) / (4 * k)
    if -2 * c[1] != rhs.coeffs[0]:
        raise AssertionError("solvability condition violated; broken recursion")
    f = RationalPoly(tuple(c))
    c[0] = -gaussian_moment(f)
    return energy, RationalPoly(tuple(c))


def build_series(v1: RationalPoly, n_max: int) -> PerturbationSeries:
    """Run the hierarchy through order n_max (exact at every step)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    records = []
    for n in range(1, n_max + 1):
        vt = effective_perturbation(n, v1, records)
        energy, f = solve_order(vt)
        records.append(OrderRecord(n, energy, f, vt))
    return PerturbationSeries(v1, tuple(records))
