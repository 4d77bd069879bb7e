"""Executable checks of the constructions, each producing a CheckReport.

Every check owns a generator seeded from (seed, check id), so results are
deterministic and independent of execution order.  A failing report always
carries the first counterexample found, in text and structured form.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Optional

from . import crossed as cr
from . import linalg
from . import numfield as nf
from . import sampling
from . import serialize
from .crossed import CrossedModel
from .grp import GroupElement, Ordering, compose, in_H, lex_compare
from .numfield import FieldElement, PrimeBasis
from .series import (
    SeriesElement,
    alpha_prefix,
    residual,
    series_inv,
    split_at_generator,
)


class ConfigError(ValueError):
    pass


@dataclass
class CheckReport:
    check_id: str
    anchor: str
    samples: int
    status: str
    witness: Optional[dict] = None
    seconds: float = 0.0

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("seconds")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(**{k: d[k] for k in ("check_id", "anchor", "samples", "status", "witness")})

    def to_json(self) -> str:
        return serialize.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "CheckReport":
        return cls.from_dict(json.loads(text))

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} {self.check_id} ({self.samples} samples): {self.anchor}"


class _Tally:
    """Counts samples and keeps the first failure."""

    def __init__(self):
        self.samples = 0
        self.witness: Optional[dict] = None

    def record(self, ok: bool, **context: Any) -> bool:
        self.samples += 1
        if not ok and self.witness is None:
            self.witness = {k: _describe(v) for k, v in context.items()}
        return ok

    def report(self, check_id: str, anchor: str, started: float) -> CheckReport:
        status = "pass" if self.witness is None else "fail"
        return CheckReport(check_id, anchor, self.samples, status, self.witness, time.perf_counter() - started)


def _describe(value: Any):
    if isinstance(value, cr.CrossedElement):
        return {"text": str(value), "record": serialize.crossed_record(value)}
    if isinstance(value, SeriesElement):
        return {"text": str(value), "record": serialize.series_record(value)}
    if isinstance(value, FieldElement):
        return {"text": str(value), "record": serialize.field_record(value)}
    if isinstance(value, (GroupElement,)):
        return str(value)
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


def _rng(seed: int, check_id: str) -> random.Random:
    return random.Random(f"{seed}:{check_id}")


def _need_level(level: int, minimum: int = 1):
    if level < minimum:
        raise ConfigError(f"level must be >= {minimum} for this check, got {level}")


# individual checks

def check_ring_axioms(seed: int = 0, trials: int = 500, level: int = 2, max_terms: int = 5) -> CheckReport:
    """Associativity, distributivity and units of the twisted product."""
    _need_level(level)
    started = time.perf_counter()
    rng = _rng(seed, "ring_axioms")
    basis = PrimeBasis.first(level)
    one = SeriesElement.one(basis)
    tally = _Tally()
    for _ in range(trials):
        a, b, c = (sampling.series_element(rng, basis, max_terms=max_terms) for _ in range(3))
        ab = a * b
        ok = (ab * c == a * (b * c)
              and a * (b + c) == ab + a * c
              and (a + b) * c == a * c + b * c
              and one * a == a == a * one)
        tally.record(ok, a=a, b=b, c=c)
    return tally.report("ring_axioms", "twisted product is associative, distributive, unital", started)


def check_fixed_field(seed: int = 0, trials: int = 500, level: int = 3) -> CheckReport:
    """An element of K_m is fixed by every f_i exactly when it is rational."""
    _need_level(level)
    started = time.perf_counter()
    rng = _rng(seed, "fixed_field")
    basis = PrimeBasis.first(level)
    tally = _Tally()
    tally.record(not nf.fixed_by_all(FieldElement.sqrt_p(basis, 1)), a="r1")
    tally.record(nf.fixed_by_all(FieldElement.rational(basis, 7)), a="7")
    for k in range(trials):
        if k % 3 == 0:
            a = FieldElement.rational(basis, sampling.rational(rng))
            expected = True
        elif k % 3 == 1:
            a = sampling.field_element(rng, basis, force_radical=True)
            expected = False
        else:
            a = sampling.field_element(rng, basis, max_terms=4)
            expected = a.is_rational()
        tally.record(nf.fixed_by_all(a) == expected == a.is_rational(), a=a)
    return tally.report("fixed_field", "fixed by all f_i iff rational", started)


def check_twist_character(seed: int = 0, trials: int = 100, level: int = 2) -> CheckReport:
    """Phi(x_i) = f_i, the sign law on radicals, squares act trivially, Phi is a homomorphism."""
    _need_level(level)
    started = time.perf_counter()
    rng = _rng(seed, "twist_character")
    basis = PrimeBasis.first(level)
    tally = _Tally()
    for _ in range(trials):
        i = rng.randint(1, level)
        a = sampling.field_element(rng, basis, max_terms=4)
        tally.record(nf.apply_phi(GroupElement.gen(i), a) == nf.apply_auto(i, a), i=i, a=a)
        g = sampling.group_element(rng, level + 1, bound=3)
        radical = FieldElement.sqrt_p(basis, i)
        expected = radical if g.exponent(i) % 2 == 0 else -radical
        tally.record(nf.apply_phi(g, radical) == expected, g=g, i=i)
        square = compose(g, g)
        tally.record(in_H(square) and nf.apply_phi(square, a) == a, g=square, a=a)
        h = sampling.group_element(rng, level, bound=3)
        tally.record(
            nf.apply_phi(compose(g, h), a) == nf.apply_phi(g, nf.apply_phi(h, a)), g=g, h=h, a=a
        )
    return tally.report("twist_character", "Phi(x_i) = f_i and Phi_x(sqrt p_i) = (-1)^n_i sqrt p_i", started)


def check_commutation_table(seed: int = 0, level: int = 3) -> CheckReport:
    """Generator relations, in both the crossed and the series model."""
    _need_level(level)
    started = time.perf_counter()
    model = CrossedModel.first(level)
    basis = model.basis
    tally = _Tally()
    for i in range(1, level + 1):
        r, x = model.radical(i), model.gen(i)
        sr, sx = SeriesElement.radical(basis, i), SeriesElement.gen(basis, i)
        tally.record(x * x == model.t(i), relation=f"x{i}^2 = t{i}")
        tally.record(r * r == model.scalar(basis.primes[i - 1]), relation=f"r{i}^2 = p{i}")
        tally.record(sr * sr == SeriesElement.scalar(basis, basis.primes[i - 1]), relation=f"series r{i}^2")
        tally.record(sx * sx == SeriesElement.gen(basis, i, 2), relation=f"series x{i}^2")
        for j in range(1, level + 1):
            xj, sxj = model.gen(j), SeriesElement.gen(basis, j)
            if i == j:
                tally.record(r * xj == -(xj * r), relation=f"r{i} x{i} = -x{i} r{i}")
                tally.record(sr * sxj == -(sxj * sr), relation=f"series r{i} x{i} = -x{i} r{i}")
            else:
                tally.record(r * xj == xj * r, relation=f"r{i} x{j} = x{j} r{i}")
                tally.record(sr * sxj == sxj * sr, relation=f"series r{i} x{j} = x{j} r{i}")
    return tally.report("commutation_table", "sqrt p_i x_i = -x_i sqrt p_i, other pairs commute", started)


def check_crossed_series_oracle(seed: int = 0, trials: int = 100, levels=(1, 2, 3)) -> CheckReport:
    """Crossed normal-form product agrees with the twisted series product under t_i -> x_i^2."""
    started = time.perf_counter()
    rng = _rng(seed, "crossed_series_oracle")
    tally = _Tally()
    for m in levels:
        _need_level(m)
        model = CrossedModel.first(m)
        for _ in range(trials):
            a = sampling.crossed_element(rng, model, max_terms=4, coeff_terms=2)
            b = sampling.crossed_element(rng, model, max_terms=4, coeff_terms=2)
            sa, sb = cr.to_series(a), cr.to_series(b)
            ok = cr.to_series(a * b) == sa * sb and cr.from_series(sa, model) == a
            tally.record(ok, level=m, a=a, b=b)
    return tally.report("crossed_series_oracle", "normal form product equals series product", started)


def check_inversion(seed: int = 0, trials: int = 100, level: int = 2, series_trials: int = 5) -> CheckReport:
    """Exact crossed inverses, the geometric series residual, and residual frontier growth."""
    _need_level(level)
    started = time.perf_counter()
    rng = _rng(seed, "inversion")
    model = CrossedModel.first(level)
    tally = _Tally()
    for _ in range(trials):
        a = sampling.nonzero_crossed(rng, model, max_terms=4)
        ai = cr.crossed_inv(a)
        tally.record(a * ai == model.one() and ai * a == model.one(), a=a)
    basis = model.basis
    x1 = SeriesElement.gen(basis, 1)
    one = SeriesElement.one(basis)
    geo = series_inv(one - x1, 8)
    tally.record(residual(one - x1, geo) == -SeriesElement.gen(basis, 1, 9), case="(1 - x1)^-1 at budget 8")
    for _ in range(series_trials):
        a = sampling.nonzero_series(rng, basis, max_terms=3, bound=1, coeff_terms=2)
        fronts = []
        for k in (1, 3, 5):
            res = residual(a, series_inv(a, k))
            fronts.append(None if res.is_zero() else res.lexmin())
        if fronts[0] is None:
            # monomials invert exactly; nothing to grow
            tally.record(all(f is None for f in fronts), a=a)
            continue
        ok = all(
            f2 is not None and lex_compare(f1, f2) is Ordering.LT for f1, f2 in zip(fronts, fronts[1:])
        )
        tally.record(ok, a=a, frontiers=str([str(f) for f in fronts]))
    return tally.report("inversion", "every nonzero element is invertible", started)


def check_center(seed: int = 0, levels=(1, 2), probes: int = 50) -> CheckReport:
    """Center of the level-m model is its coefficient field, and the dimension over it is 4^m."""
    started = time.perf_counter()
    rng = _rng(seed, "center")
    tally = _Tally()
    for m in levels:
        _need_level(m)
        for with_s in (False, True):
            model = CrossedModel.first(m, with_s)
            basis = cr.center_basis(model)
            tally.record(len(basis) == 1 and basis[0] == model.one(), level=m, r_mode=with_s,
                         basis=str([str(b) for b in basis]))
            for _ in range(probes if not with_s else probes // 5):
                probe = sampling.crossed_element(rng, model)
                tally.record(all(cr.commutes(z, probe) for z in basis), level=m, probe=probe)
        tally.record(cr.dim_over_center(m) == 4 ** m, level=m, what="dimension")
        tally.record(cr.dim_over_center(m, with_s=True) == 4 ** m, level=m, what="R-mode dimension")
    return tally.report("center", "center is the coefficient field; basis B_m", started)


def check_centralizer(seed: int = 0, trials: int = 200, level: int = 3) -> CheckReport:
    """sqrt(p_i)*alpha - alpha*sqrt(p_i) = 2*beta*sqrt(p_i)*x_i != 0 for alpha = beta*x_i + gamma."""
    _need_level(level)
    started = time.perf_counter()
    rng = _rng(seed, "centralizer")
    basis = PrimeBasis.first(level)
    tally = _Tally()

    def identity_holds(alpha: SeriesElement, i: int) -> bool:
        beta, gamma = split_at_generator(alpha, i)
        r = SeriesElement.radical(basis, i)
        lhs = r * alpha - alpha * r
        rhs = 2 * beta * r * SeriesElement.gen(basis, i)
        return lhs == rhs and (beta.is_zero() or not lhs.is_zero())

    x1 = SeriesElement.gen(basis, 1)
    r1 = SeriesElement.radical(basis, 1)
    tally.record(r1 * x1 - x1 * r1 == 2 * r1 * x1, case="alpha = x1")
    for _ in range(trials):
        i = rng.randint(1, level)
        beta = sampling.nonzero_series(rng, basis, max_terms=3)
        gamma = sampling.series_element(rng, basis, max_terms=3)
        beta = _even_at(beta, i)
        gamma = _even_at(gamma, i)
        if beta.is_zero():
            continue
        alpha = beta * SeriesElement.gen(basis, i) + gamma
        tally.record(identity_holds(alpha, i), i=i, alpha=alpha)
    return tally.report("centralizer", "elements with an odd x_i power do not commute with sqrt p_i", started)


def _even_at(s: SeriesElement, i: int) -> SeriesElement:
    """Round every x_i exponent down to an even number."""
    terms = {}
    for g, c in s.terms.items():
        n = g.exponent(i)
        if n % 2:
            g = compose(g, GroupElement.gen(i, -1))
        terms[g] = terms[g] + c if g in terms else c
    return SeriesElement(s.basis, terms)


def check_generator_independence(seed: int = 0, level: int = 2) -> CheckReport:
    """x_1..x_m are independent over the center; sqrt p_n commutes with x_i (i<n) but not x_n."""
    _need_level(level)
    started = time.perf_counter()
    model = CrossedModel.first(level)
    tally = _Tally()
    center = cr.center_basis(model)
    columns = [cr.to_vector(z * model.gen(i)) for i in range(1, level + 1) for z in center]
    rows = [list(r) for r in zip(*columns)]
    kernel = linalg.nullspace(rows)
    tally.record(not kernel, what="kernel of sum c_i x_i = 0", size=len(kernel))
    for n in range(1, level + 1):
        rn = model.radical(n)
        for i in range(1, n):
            tally.record(cr.commutes(rn, model.gen(i)), relation=f"r{n} x{i} commute")
        tally.record(not cr.commutes(rn, model.gen(n)), relation=f"r{n} x{n} do not commute")
    return tally.report("generator_independence", "the x_i are linearly independent over the center", started)


def check_r_structure(seed: int = 0, level: int = 2) -> CheckReport:
    """R_n: dimension 4^n over a central field containing s, and alpha - prefix = alpha_n."""
    _need_level(level)
    started = time.perf_counter()
    tally = _Tally()
    model = CrossedModel.first(level, with_s=True)
    tally.record(cr.dim_over_center(model) == 4 ** level, what="dimension")
    s = model.s()
    tally.record(cr.is_central(s), what="s central")
    prefix = model.zero()
    for i in range(1, level + 1):
        prefix = prefix + cr.crossed_inv(model.gen(i))
    tally.record(model.alpha() - prefix == s, what="alpha - prefix = s")
    lmodel = CrossedModel.first(level)
    lprefix = lmodel.zero()
    for i in range(1, level + 1):
        lprefix = lprefix + cr.crossed_inv(lmodel.gen(i))
    tally.record(cr.to_series(lprefix) == alpha_prefix(level, level, lmodel.basis).body,
                 what="crossed prefix equals series prefix")
    for i in range(1, level + 1):
        tally.record(cr.commutes(s, model.radical(i)) and cr.commutes(s, model.gen(i)), what=f"s commutes at {i}")
    return tally.report("r_structure", "R_n is finite dimensional over F(alpha_n)", started)


def check_torsion_norm(seed: int = 0, trials: int = 200, level: int = 2) -> CheckReport:
    """Commutators have regular norm 1; central commutators are +-1."""
    _need_level(level)
    started = time.perf_counter()
    rng = _rng(seed, "torsion_norm")
    model = CrossedModel.first(level)
    tally = _Tally()
    one = model.one()
    c = cr.crossed_commutator(model.radical(1), model.gen(1))
    tally.record(c == -one and cr.regular_norm(c) == 1 and cr.is_torsion_central(c), case="[r1, x1]")
    tally.record(not cr.is_torsion_central(model.t(1)), case="t1 is not torsion")
    central_seen = 0
    for k in range(trials):
        if k % 2 == 0:
            a, b = sampling.crossed_monomial(rng, model), sampling.crossed_monomial(rng, model)
        else:
            a = sampling.nonzero_crossed(rng, model, max_terms=3)
            b = sampling.nonzero_crossed(rng, model, max_terms=3)
        c = cr.crossed_commutator(a, b)
        ok = cr.regular_norm(c) == 1
        if ok and cr.is_central(c):
            central_seen += 1
            ok = cr.is_torsion_central(c)
        tally.record(ok, a=a, b=b, commutator=c)
    report = tally.report("torsion_norm", "commutators have norm 1; central ones are torsion", started)
    report.anchor += f" ({central_seen} central commutators)"
    return report


def check_witnesses(seed: int = 0, trials: int = 200, level: int = 3) -> CheckReport:
    """The radicals failing to commute with a are exactly the indices with mu_i = 1."""
    _need_level(level)
    started = time.perf_counter()
    rng = _rng(seed, "witnesses")
    model = CrossedModel.first(level)
    tally = _Tally()
    for _ in range(trials):
        a = sampling.crossed_element(rng, model, max_terms=4)
        tally.record(cr.noncommuting_witnesses(a) == cr.mu_support(a), a=a)
    return tally.report("witnesses", "each element fails to commute with finitely many sqrt p_i", started)


def _level(cfg: "VerifyConfig", preferred: int) -> int:
    return cfg.level if cfg.level is not None else preferred


CHECKS: dict[str, Callable[["VerifyConfig"], CheckReport]] = {
    "ring_axioms": lambda c: check_ring_axioms(c.seed, c.trials("ring_axioms", 500), _level(c, 2)),
    "fixed_field": lambda c: check_fixed_field(c.seed, c.trials("fixed_field", 500), _level(c, 3)),
    "twist_character": lambda c: check_twist_character(c.seed, c.trials("twist_character", 100), _level(c, 2)),
    "commutation_table": lambda c: check_commutation_table(c.seed, _level(c, 3)),
    "crossed_series_oracle": lambda c: check_crossed_series_oracle(
        c.seed, c.trials("crossed_series_oracle", 100), tuple(range(1, _level(c, 3) + 1))
    ),
    "inversion": lambda c: check_inversion(c.seed, c.trials("inversion", 100), _level(c, 2)),
    "center": lambda c: check_center(c.seed, tuple(range(1, min(_level(c, 2), 2) + 1))),
    "centralizer": lambda c: check_centralizer(c.seed, c.trials("centralizer", 200), _level(c, 3)),
    "generator_independence": lambda c: check_generator_independence(c.seed, _level(c, 2)),
    "r_structure": lambda c: check_r_structure(c.seed, _level(c, 2)),
    "torsion_norm": lambda c: check_torsion_norm(c.seed, c.trials("torsion_norm", 200), _level(c, 2)),
    "witnesses": lambda c: check_witnesses(c.seed, c.trials("witnesses", 200), _level(c, 3)),
}


@dataclass(frozen=True)
class VerifyConfig:
    """Suite settings; ``level=None`` lets each check use its own default level."""

    seed: int = 0
    level: Optional[int] = None
    trial_overrides: dict = field(default_factory=dict)
    scale: float = 1.0
    only: tuple = ()

    def __post_init__(self):
        if self.level is not None and self.level < 1:
            raise ConfigError(f"checks involving radicals need level >= 1, got {self.level}")
        unknown = [c for c in self.only if c not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown check id(s): {', '.join(unknown)}")

    def trials(self, check_id: str, default: int) -> int:
        if check_id in self.trial_overrides:
            return self.trial_overrides[check_id]
        return max(1, int(default * self.scale))


def run_all(config: Optional[VerifyConfig] = None) -> list[CheckReport]:
    """Run every (or every selected) check; reports ordered by check id."""
    config = config or VerifyConfig()
    ids = sorted(config.only or CHECKS)
    return [CHECKS[i](config) for i in ids]
