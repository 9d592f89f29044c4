"""Count polynomials in q recovered by exact Lagrange interpolation.

Counting a fixed family branch at d+1 primes determines a degree-d
polynomial with rational coefficients; for the families here the result
must have integer coefficients and must keep predicting counts at held-out
primes exactly.  A branch policy chooses, per field, parameters that stay
inside one case of the closed-form branching (e.g. "the special value" is
the field element (-1)^e, not a fixed integer), since mixing branches
across primes makes the counts non-polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counting import VarietyInstance, normal_form_instance
from .errors import DuplicateAbscissa, HeldOutMismatch, UnsupportedType
from .forests import normal_form_slots
from .gf import Field, field_make, is_prime
from .recursion import recursive_count


@dataclass(frozen=True)
class QPolynomial:
    """Exact-rational-coefficient polynomial in q, ascending degree."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs) -> "QPolynomial":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return QPolynomial(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __call__(self, q) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def coefficient_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        return self.text()

    def text(self, descending: bool = True) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        degrees = range(len(self.coeffs))
        for d in (reversed(degrees) if descending else degrees):
            c = self.coeffs[d]
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "q" if d == 1 else f"q^{d}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def interpolate_counts(samples) -> QPolynomial:
    """Unique Lagrange interpolant through (q, count) samples, exact."""
    samples = [(int(x), int(y)) for x, y in samples]
    xs = [x for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa(f"repeated q values in {sorted(xs)}")
    if len(samples) < 2:
        raise ValueError("need at least 2 samples")
    n = len(samples)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(samples):
        # basis polynomial prod_{j != i} (q - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(samples):
            if j == i:
                continue
            denom *= xi - xj
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d + 1] += c
                nxt[d] -= c * xj
            basis = nxt
        scale = Fraction(yi, denom)
        for d, c in enumerate(basis):
            coeffs[d] += c * scale
    return QPolynomial.make(coeffs)


# ---------------------------------------------------------------------------
# branch policies
# ---------------------------------------------------------------------------

def _special_code(dynkin_type: str, rank: int, field: Field) -> int | None:
    """Encoding of the parameter value that switches the count formula."""
    t = dynkin_type.upper()
    if t == "A" and rank % 2 == 1:
        return field.neg_enc(1) if ((rank + 1) // 2) % 2 else 1
    if t == "D" and rank % 2 == 1:
        return 1
    if t == "D":
        return field.neg_enc(1) if (rank // 2) % 2 else 1
    if t == "E" and rank == 7:
        return field.neg_enc(1)
    return None


@dataclass(frozen=True)
class FamilyPolicy:
    """A Dynkin family plus a branch-stable parameter choice rule."""

    dynkin_type: str
    rank: int
    branch: str  # generic | special | equal-special | one-special | double-special

    @property
    def name(self) -> str:
        return f"{self.dynkin_type.upper()}{self.rank}-{self.branch}"

    @property
    def degree_bound(self) -> int:
        return self.rank

    def params_for(self, field: Field) -> tuple[int, ...] | None:
        """Normal-form parameters in this branch, or None when the field is
        too small to realize it."""
        t = self.dynkin_type.upper()
        n_slots = len(normal_form_slots(t, self.rank))
        special = _special_code(t, self.rank, field)
        if n_slots == 0:
            if self.branch != "generic":
                raise UnsupportedType(f"{self.name}: family has a single branch")
            return ()
        nonspecial = [c for c in range(1, field.q) if c != special]
        if n_slots == 1:
            if self.branch == "generic":
                return (nonspecial[0],) if nonspecial else None
            if self.branch == "special":
                return (special,)
            raise UnsupportedType(f"{self.name}: unknown branch")
        if self.branch == "generic":
            return tuple(nonspecial[:2]) if len(nonspecial) >= 2 else None
        if self.branch == "equal-special":
            return (nonspecial[0],) * 2 if nonspecial else None
        if self.branch == "one-special":
            return (special, nonspecial[0]) if nonspecial else None
        if self.branch == "double-special":
            return (special, special)
        raise UnsupportedType(f"{self.name}: unknown branch")

    def instance(self, field: Field) -> VarietyInstance | None:
        params = self.params_for(field)
        if params is None:
            return None
        return normal_form_instance(field, self.dynkin_type, self.rank, params)


@dataclass(frozen=True)
class FitReport:
    policy: str
    polynomial: QPolynomial
    samples: tuple[tuple[int, int], ...]
    held_out: tuple[tuple[int, int], ...]
    residuals: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(r == 0 for r in self.residuals)


def _primes_from(start: int):
    p = start
    while True:
        if is_prime(p):
            yield p
        p += 1


def fit_and_verify(policy: FamilyPolicy, degree: int | None = None, *,
                   extra: int = 2, counter=None, memo: dict | None = None) -> FitReport:
    """Fit the count polynomial of a family branch and verify it on held-out
    primes.

    Counts run at the first degree+1 admissible primes >= 3, then `extra`
    more; the interpolant must have integer coefficients and zero held-out
    residuals (a mismatch raises HeldOutMismatch).  Counting defaults to the
    leaf-removal recursion, which stays fast at the larger primes.
    """
    degree = policy.degree_bound if degree is None else degree
    if counter is None:
        memo = {} if memo is None else memo
        def counter(inst):
            return recursive_count(inst, memo).count
    samples: list[tuple[int, int]] = []
    held: list[tuple[int, int]] = []
    for p in _primes_from(3):
        field = field_make(p)
        inst = policy.instance(field)
        if inst is None:
            continue
        target = samples if len(samples) <= degree else held
        target.append((p, counter(inst)))
        if len(held) >= extra:
            break
    poly = interpolate_counts(samples)
    if not poly.is_integral():
        raise ArithmeticError(
            f"{policy.name}: interpolated coefficients are not integers: {poly}")
    residuals = []
    for q, count in held:
        predicted = poly(q)
        residuals.append(int(predicted - count))
        if predicted != count:
            raise HeldOutMismatch(q, predicted, count)
    return FitReport(policy.name, poly, tuple(samples), tuple(held),
                     tuple(residuals))
