"""Genus-zero GW, GV and QK invariant tables and the divisor sums between them.

Every transform has the shape

    out[beta] = sum_{r | ind(beta)} c(r) * in[beta / r]      if K.beta = 0
    out[beta] = in[beta]                                     if K.beta < 0

with an integer-or-rational weight ``c(r)`` depending on the transform and on
the number ``n`` of insertions:

=============  ===========  ======================
direction      n            c(r)
=============  ===========  ======================
GV -> GW       any          r^(n-3)
GW -> GV       any          mu(r) r^(n-3)
GV -> QK       1 / 2 / >=3  r / 1 / r^(n-3)
QK -> GV       1 / 2 / >=3  mu(r) r / mu(r) / mu(r) r^(n-3)
=============  ===========  ======================

Each inverse pair is a Dirichlet convolution with a completely multiplicative
function and its Moebius twist.  Insertions enter only through ``n`` and their
complex degrees; the QK relations need the degree hypotheses checked by
:func:`degree_check`.

A table is either *explicit* (only its keys are known, and the divisor sums
need every ``beta / r`` to be a key) or *complete* (it is a whole truncated
series, so absent classes inside the truncation are zero).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Mapping, NamedTuple, Sequence

from .arith import divisors, mobius
from .curve_lattice import (
    CurveClass,
    GeometryModel,
    Truncation,
    as_class,
    canonical_degree,
    divide,
    index,
)
from .errors import (
    DegreeHypothesisViolated,
    KindMismatch,
    NotDivisorClosed,
    OutOfTruncation,
    RankMismatch,
    UnsupportedN,
    ValidationError,
)
from .novikov_series import NovikovSeries

KINDS = ("GW", "GV", "QK")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class InvariantTable:
    kind: str
    n: int
    insertion_degrees: tuple[int, ...]
    geom: GeometryModel
    entries: Mapping[CurveClass, Fraction]
    truncation: Truncation
    complete: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown table kind {self.kind!r}")
        if self.n < 0:
            raise ValidationError("n must be non-negative")
        degs = tuple(int(d) for d in self.insertion_degrees)
        if len(degs) != self.n:
            raise ValidationError(f"{self.n} insertions but {len(degs)} degrees")
        if any(d < 0 for d in degs):
            raise ValidationError("insertion degrees must be non-negative")
        object.__setattr__(self, "insertion_degrees", degs)
        if self.truncation.rank != self.geom.rank:
            raise RankMismatch("truncation and geometry have different ranks")
        clean = {}
        for key, value in self.entries.items():
            beta = as_class(key)
            if beta.rank != self.geom.rank:
                raise RankMismatch(f"class {beta} does not have rank {self.geom.rank}")
            if not self.truncation.admits(beta):
                raise OutOfTruncation(f"{beta} lies beyond the truncation")
            value = Fraction(value)
            if self.complete and not value:
                continue
            clean[beta] = value
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def k_degree(self, beta: CurveClass) -> int:
        return canonical_degree(self.geom, beta)

    def value(self, beta: CurveClass, needed_by: CurveClass | None = None) -> Fraction:
        if beta in self.entries:
            return self.entries[beta]
        if self.complete:
            if not self.truncation.admits(beta):
                raise OutOfTruncation(f"{beta} lies beyond the truncation")
            return Fraction(0)
        raise NotDivisorClosed(needed_by or beta, beta)

    def domain(self) -> list[CurveClass]:
        """Classes on which a transform of this table is defined."""
        if not self.complete:
            return list(self.entries)
        out = set(self.entries)
        for beta in self.entries:
            if self.k_degree(beta) == 0:
                r = 2
                while self.truncation.admits(beta * r):
                    out.add(beta * r)
                    r += 1
        return sorted(out)

    def with_entries(self, entries, kind: str | None = None) -> InvariantTable:
        return replace(self, entries=entries, kind=kind or self.kind)

    def to_series(self) -> NovikovSeries:
        return NovikovSeries(self.entries, self.truncation)

    @classmethod
    def from_series(cls, series: NovikovSeries, kind, n, insertion_degrees, geom) -> InvariantTable:
        return cls(kind, n, tuple(insertion_degrees), geom, series.terms, series.truncation, True)


def check_divisor_closed(table: InvariantTable) -> None:
    """Raise :class:`NotDivisorClosed` on the first key missing a divisor.

    Also checks that ``K.beta = 0`` propagates to every ``beta / r``, so the
    Calabi-Yau branch is used consistently along divisor chains.
    """
    for beta in table.entries:
        if table.k_degree(beta) != 0:
            continue
        for r in divisors(index(beta)):
            sub = divide(beta, r)
            if table.k_degree(sub) != 0:
                raise ValidationError(
                    f"K.beta = 0 at {beta} but K.(beta/{r}) = {table.k_degree(sub)}"
                )
            if not table.complete and sub not in table.entries:
                raise NotDivisorClosed(beta, sub)


class Contribution(NamedTuple):
    r: int
    coefficient: Fraction
    source: CurveClass
    value: Fraction


@dataclass
class TransformReport:
    input_kind: str
    output_kind: str
    n: int
    relation: str
    contributions: dict[CurveClass, list[Contribution]] = field(default_factory=dict)
    outputs: dict[CurveClass, Fraction] = field(default_factory=dict)

    @property
    def integral(self) -> dict[CurveClass, bool]:
        return {b: v.denominator == 1 for b, v in self.outputs.items()}

    def to_json(self) -> dict:
        rows = []
        for beta, terms in self.contributions.items():
            rows.append(
                {
                    "beta": list(beta.coords),
                    "value": format_rational(self.outputs[beta]),
                    "integral": self.outputs[beta].denominator == 1,
                    "terms": [
                        {
                            "r": t.r,
                            "coefficient": format_rational(t.coefficient),
                            "source": list(t.source.coords),
                            "term": format_rational(t.value),
                        }
                        for t in terms
                    ],
                }
            )
        return {
            "from": self.input_kind,
            "to": self.output_kind,
            "n": self.n,
            "relation": self.relation,
            "entries": rows,
        }

    def to_text(self) -> str:
        lines = [f"{self.input_kind} -> {self.output_kind}, n = {self.n}: {self.relation}"]
        for beta, terms in self.contributions.items():
            out = self.outputs[beta]
            flag = "" if out.denominator == 1 else "  [non-integral]"
            lines.append(f"{beta} = {format_rational(out)}{flag}")
            for t in terms:
                lines.append(
                    f"    r={t.r}  c={format_rational(t.coefficient)}  "
                    f"src={t.source}  term={format_rational(t.value)}"
                )
        return "\n".join(lines)


def _divisor_sum(
    table: InvariantTable,
    weight: Callable[[int], Fraction],
    out_kind: str,
    relation: str,
    before_each: Callable[[CurveClass], None] | None = None,
) -> tuple[InvariantTable, TransformReport]:
    check_divisor_closed(table)
    report = TransformReport(table.kind, out_kind, table.n, relation)
    out: dict[CurveClass, Fraction] = {}
    for beta in table.domain():
        if before_each is not None:
            before_each(beta)
        if table.k_degree(beta) == 0:
            terms = []
            for r in divisors(index(beta)):
                c = weight(r)
                if not c:
                    continue
                src = divide(beta, r)
                terms.append(Contribution(r, c, src, c * table.value(src, beta)))
        else:
            terms = [Contribution(1, Fraction(1), beta, table.value(beta))]
        total = sum((t.value for t in terms), Fraction(0))
        report.contributions[beta] = terms
        report.outputs[beta] = total
        out[beta] = total
    return table.with_entries(out, out_kind), report


def _power(r: int, e: int) -> Fraction:
    return Fraction(r) ** e


def _require(table: InvariantTable, kind: str) -> None:
    if table.kind != kind:
        raise KindMismatch(f"expected a {kind} table, got {table.kind}")


# ---------------------------------------------------------------------------
# GV <-> GW


def gw_from_gv_report(gv: InvariantTable) -> tuple[InvariantTable, TransformReport]:
    _require(gv, "GV")
    n = gv.n
    return _divisor_sum(
        gv, lambda r: _power(r, n - 3), "GW", "multiple cover formula, c(r) = r^(n-3)"
    )


def gv_from_gw_report(gw: InvariantTable) -> tuple[InvariantTable, TransformReport]:
    _require(gw, "GW")
    n = gw.n
    return _divisor_sum(
        gw,
        lambda r: mobius(r) * _power(r, n - 3),
        "GV",
        "Moebius inverse of the multiple cover formula, c(r) = mu(r) r^(n-3)",
    )


def gw_from_gv(gv: InvariantTable) -> InvariantTable:
    return gw_from_gv_report(gv)[0]


def gv_from_gw(gw: InvariantTable) -> InvariantTable:
    return gv_from_gw_report(gw)[0]


# ---------------------------------------------------------------------------
# GV <-> QK


@dataclass(frozen=True)
class Verdict:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def degree_verdict(n: int, insertion_degrees: Sequence[int], m: int, k_beta: int) -> Verdict:
    """Degree hypothesis of the QK/GV relation with ``n`` insertions.

    One insertion needs ``deg = m - K.beta - 2``; two need
    ``deg_1 + deg_2 = m - K.beta - 1``; three or more need nothing.
    """
    degs = list(insertion_degrees)
    if len(degs) != n:
        return Verdict(False, f"{n} insertions but {len(degs)} degrees")
    if n == 0:
        return Verdict(False, "no QK/GV relation without insertions")
    if n == 1:
        want = m - k_beta - 2
        if degs[0] == want:
            return Verdict(True, f"deg = {want}")
        return Verdict(False, f"one-point relation needs deg = m - K.beta - 2 = {want}, got {degs[0]}")
    if n == 2:
        want = m - k_beta - 1
        if degs[0] + degs[1] == want:
            return Verdict(True, f"deg_1 + deg_2 = {want}")
        return Verdict(
            False,
            f"two-point relation needs deg_1 + deg_2 = m - K.beta - 1 = {want}, "
            f"got {degs[0] + degs[1]}",
        )
    return Verdict(True, "no degree condition for n >= 3")


def degree_check(
    n: int, insertion_degrees: Sequence[int], geom: GeometryModel, beta: CurveClass
) -> Verdict:
    return degree_verdict(n, insertion_degrees, geom.dim, canonical_degree(geom, as_class(beta)))


def vanishing_by_dimension(m: int, k_beta: int, deg_gamma1: int) -> bool:
    """True when an insertion of this degree forces every (twisted) invariant to vanish."""
    return deg_gamma1 >= m - k_beta - 1


def _qk_setup(table: InvariantTable):
    n = table.n
    if n == 0:
        raise UnsupportedN("QK/GV relations start at n = 1 insertion; n = 0 is not covered")

    def check(beta: CurveClass) -> None:
        v = degree_check(n, table.insertion_degrees, table.geom, beta)
        if not v:
            raise DegreeHypothesisViolated(beta, v.detail)

    return n, check


def qk_from_gv_report(gv: InvariantTable) -> tuple[InvariantTable, TransformReport]:
    _require(gv, "GV")
    n, check = _qk_setup(gv)
    if n == 1:
        weight, rel = (lambda r: Fraction(r)), "one-point QK/GV relation, c(r) = r"
    elif n == 2:
        weight, rel = (lambda r: Fraction(1)), "two-point QK/GV relation, c(r) = 1"
    else:
        weight, rel = (lambda r: _power(r, n - 3)), "n-point relation QK = GW, c(r) = r^(n-3)"
    return _divisor_sum(gv, weight, "QK", rel, check)


def gv_from_qk_report(qk: InvariantTable) -> tuple[InvariantTable, TransformReport]:
    _require(qk, "QK")
    n, check = _qk_setup(qk)
    if n == 1:
        weight, rel = (lambda r: Fraction(mobius(r) * r)), "one-point QK/GV relation, c(r) = mu(r) r"
    elif n == 2:
        weight, rel = (lambda r: Fraction(mobius(r))), "two-point QK/GV relation, c(r) = mu(r)"
    else:
        weight, rel = (
            lambda r: mobius(r) * _power(r, n - 3)
        ), "n-point QK/GV relation, c(r) = mu(r) r^(n-3)"
    return _divisor_sum(qk, weight, "GV", rel, check)


def qk_from_gv(gv: InvariantTable) -> InvariantTable:
    return qk_from_gv_report(gv)[0]


def gv_from_qk(qk: InvariantTable) -> InvariantTable:
    return gv_from_qk_report(qk)[0]


TRANSFORMS = {
    ("GV", "GW"): gw_from_gv_report,
    ("GW", "GV"): gv_from_gw_report,
    ("GV", "QK"): qk_from_gv_report,
    ("QK", "GV"): gv_from_qk_report,
}


def transform(table: InvariantTable, to_kind: str) -> tuple[InvariantTable, TransformReport]:
    try:
        fn = TRANSFORMS[(table.kind, to_kind)]
    except KeyError:
        raise KindMismatch(f"no transform from {table.kind} to {to_kind}") from None
    return fn(table)


# ---------------------------------------------------------------------------
# constants, power sums, identities


def kawasaki_constant(r: int, n: int, k_beta: int) -> Fraction:
    """Constant term ``r^-(n - K.beta)`` of the twisting class on an order-``r`` stratum."""
    if r < 1:
        raise ValueError("r must be positive")
    return Fraction(r) ** -(n - k_beta)


def gv_power_sum(gv: InvariantTable, exponent: int, d: int, beta_primitive) -> Fraction:
    """``sum_{k | d} (d/k)^exponent * GV[d beta / k]`` for a primitive ``beta``."""
    beta = as_class(beta_primitive)
    if index(beta) != 1:
        raise ValueError(f"{beta} is not primitive")
    target = beta * d
    return sum(
        (Fraction(d // k) ** exponent * gv.value(beta * (d // k), target) for k in divisors(d)),
        Fraction(0),
    )


def _pairing_fn(divisor_pairing) -> Callable[[CurveClass, int], int]:
    """``(beta, j) -> (j beta) . phi`` for primitive ``beta``."""
    if callable(divisor_pairing):
        return lambda b, j: j * divisor_pairing(b)
    if isinstance(divisor_pairing, Mapping):
        table = {as_class(k): v for k, v in divisor_pairing.items()}
        return lambda b, j: j * table[b]
    phi = tuple(divisor_pairing)
    return lambda b, j: j * sum(x * y for x, y in zip(phi, b.coords))


def remark_leg_identity_check(
    gv: InvariantTable, gw: InvariantTable, divisor_pairing, d_max: int
) -> Verdict:
    """Check the two forms of the leg coefficient against each other.

    For every primitive ``beta`` with ``K.beta = 0`` and ``d <= d_max`` with
    ``d beta`` known, compare

        (beta.phi) * (GV^(1)[d beta] - GV^(3)[d beta] / d^2)

    with ``sum_{k | d} GV[d beta / k](phi) - GW[d beta](phi)``, where one
    divisor insertion is removed by the divisor equation.  ``gw`` must be the
    ``n = 0`` table produced from ``gv``.  ``divisor_pairing`` is a covector, a
    map from primitive classes to integers, or a callable.
    """
    _require(gv, "GV")
    _require(gw, "GW")
    pair = _pairing_fn(divisor_pairing)
    prims = sorted(
        {divide(b, index(b)) for b in gv.domain() if gv.k_degree(b) == 0}
    )
    failures = []
    checked = 0
    for beta in prims:
        for d in range(1, d_max + 1):
            target = beta * d
            if not gv.truncation.admits(target):
                break
            if not gv.complete and target not in gv.entries:
                continue
            lhs = pair(beta, 1) * (
                gv_power_sum(gv, 1, d, beta) - gv_power_sum(gv, 3, d, beta) / d**2
            )
            rhs = sum(
                (pair(beta, d // k) * gv.value(beta * (d // k), target) for k in divisors(d)),
                Fraction(0),
            ) - pair(beta, d) * gw.value(target)
            checked += 1
            if lhs != rhs:
                failures.append(f"{target}: {format_rational(lhs)} != {format_rational(rhs)}")
    if failures:
        return Verdict(False, "; ".join(failures))
    return Verdict(True, f"{checked} coefficients agree")


@dataclass
class IntegralityReport:
    kind: str
    offenders: list[tuple[CurveClass, Fraction]]

    @property
    def ok(self) -> bool:
        return not self.offenders

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "integral": self.ok,
            "offenders": [
                {"beta": list(b.coords), "value": format_rational(v)} for b, v in self.offenders
            ],
        }


def integrality_audit(table: InvariantTable) -> IntegralityReport:
    """List every entry with a reduced denominator other than 1."""
    return IntegralityReport(
        table.kind, [(b, v) for b, v in table.entries.items() if v.denominator != 1]
    )
