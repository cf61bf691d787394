"""Identity grids, the verification driver, and slack calibration.

Each named identity expands into a list of gridpoint tasks; a task is a pure
zero-argument callable returning reports.  Tasks are executed by a worker
pool and re-ordered by gridpoint index before emission, so output bytes do
not depend on the thread count.

Oracle-backed identities pass when the agreement depth reaches N - c, where
the per-family slack constants c come from a checked-in calibration fixture
(regenerated with ``verify --calibrate``).  A verification run fails if any
measured slack exceeds the fixture.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from typing import Callable, Mapping

from . import euler, kernels
from .characters import DirichletCharacter, char_eval
from .errors import PadicError
from .fermionic import (
    Integrand,
    alternating_power_sum,
    change_of_variable,
    verify_shift_identities,
)
from .padic import PadicContext, agreement_depth
from .report import (
    VerificationReport,
    budget_failure,
    compare_exact,
    compare_values,
)
from .zeta_char import (
    dzeta_char_dx,
    ell,
    ell_limit_oracle,
    functional_reflection_distribution,
    power_series_zeta,
    raabe_char,
    representation_pair,
    zeta_char,
    zeta_char_oracle,
    zeta_char_special,
)
from .zeta_czp import (
    SeriesBudget,
    distribution_czp_forms,
    dzeta_dx,
    integral_of_zeta_oracle,
    raabe_closed_forms,
    reflection_czp,
    zeta_czp,
    zeta_czp_oracle,
    zeta_shifted,
    zeta_special_neg,
    zeta_special_pos,
)

__all__ = [
    "IDENTITY_NAMES",
    "VerifyConfig",
    "calibrate",
    "default_slack",
    "run_verify",
]

Task = tuple[str, Callable[[], list[VerificationReport]]]

CALIBRATED_FAMILIES = (
    "oracle-czp",
    "oracle-char",
    "ell-oracle",
    "special-pos",
    "change-of-variable",
    "derivative-czp",
    "derivative-char",
    "raabe-czp-oracle",
    "raabe-char-oracle",
)


def default_slack() -> dict[str, int]:
    """Slack constants from the packaged calibration fixture."""
    text = resources.files("padiczeta").joinpath("data/calibration.json").read_text()
    obj = json.loads(text)
    return {str(k): int(v) for k, v in obj["families"].items()}


def load_slack(path) -> dict[str, int]:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return {str(k): int(v) for k, v in obj["families"].items()}


@dataclass(frozen=True)
class VerifyConfig:
    primes: tuple[int, ...] = (3, 5, 7)
    workprec: int = 16
    series_guard: int = 8
    oracle_depth: int = 5
    max_terms: int = 6000
    seed: int = 20259
    report_both_forms: bool = False
    slack: Mapping[str, int] = field(default_factory=default_slack)

    def ctx(self, p: int) -> PadicContext:
        return PadicContext(p, self.workprec, self.series_guard)

    def budget(self) -> SeriesBudget:
        return SeriesBudget(max_terms=self.max_terms, target_prec=self.workprec)

    def rng(self, name: str, p: int) -> random.Random:
        return random.Random(f"{self.seed}:{name}:{p}")

    def c(self, family: str) -> int:
        return int(self.slack.get(family, 0))

    def depth_czp(self) -> int:
        return self.oracle_depth

    def depth_char(self) -> int:
        return min(self.oracle_depth, 5)

    def depth_raabe(self, p: int) -> int:
        return min(self.oracle_depth, 3 if p >= 7 else 4)

    def fd_exponents(self) -> tuple[int, ...]:
        # the difference quotient at step p^k divides out k digits, so the
        # comparison can only resolve depth k when workprec >= 2k
        ks = tuple(k for k in (4, 6, 8) if 2 * k <= self.workprec)
        return ks or (max(1, self.workprec // 2),)


def _s_grid(cfg: VerifyConfig, name: str, p: int) -> list:
    rng = cfg.rng(name, p)
    return [0, 1, -1, 2, -2, 3, rng.randrange(1, p**12)]


def _x_grid(p: int) -> list[Fraction]:
    return [
        Fraction(1, p),
        Fraction(2, p),
        Fraction(3, p * p),
        Fraction(-1, p),
    ]


def _char_ks(p: int) -> list[int]:
    return [k for k in (0, 1, 2) if k <= p - 2]


def _guard(identity: str, params: dict, fn) -> list[VerificationReport]:
    try:
        return fn()
    except PadicError as exc:
        return [budget_failure(identity, params, f"{exc.code}: {exc}")]


# ---- identity task builders ---------------------------------------------------


def _tasks_euler_exact(cfg: VerifyConfig) -> list[Task]:
    return [("euler-exact", lambda: euler.verify_euler_identities(20))]


def _tasks_alternating_sum(cfg: VerifyConfig) -> list[Task]:
    def run() -> list[VerificationReport]:
        failures = []
        count = 0
        for m in (0, 1, 2, 3, 5, 8):
            for rho in (1, 2, 9, 27, 729):
                for x in (Fraction(0), Fraction(1), Fraction(1, 2)):
                    count += 1
                    literal = sum((-1) ** a * (x + a) ** m for a in range(rho))
                    if alternating_power_sum(m, rho, x) != literal:
                        failures.append(f"m={m} rho={rho} x={x}")
        return [
            compare_exact(
                "alternating-sum",
                {"points": count},
                Fraction(0),
                Fraction(0) if not failures else Fraction(1),
                note="; ".join(failures[:4]),
            )
        ]

    return [("alternating-sum", run)]


def _tasks_shift_integral(cfg: VerifyConfig) -> list[Task]:
    polys = ([1], [0, 1], [0, 0, 1], [1, -2, 0, 3])
    xs = (Fraction(0), Fraction(3), Fraction(1, 2), Fraction(-2))
    tasks: list[Task] = []
    for coeffs in polys:
        for x in xs:
            f = Integrand.polynomial(coeffs)
            tasks.append(
                (
                    "shift-integral",
                    lambda f=f, x=x: verify_shift_identities(f, x),
                )
            )
    return tasks


def _tasks_integral_convergence(cfg: VerifyConfig) -> list[Task]:
    depths = tuple(range(2, min(cfg.oracle_depth, 6) + 1))
    xs = (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(3))
    m_max = 12

    def run(p: int, x: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        prec = cfg.workprec + 6 + max(depths)
        sums = kernels.monomial_alternating_sums(p, prec, x, m_max, depths)
        out = []
        for n_depth in depths:
            worst = None
            for m in range(m_max + 1):
                target = ctx.from_fraction(euler.euler_poly(m, x), relprec=prec)
                d = agreement_depth(sums[(m, n_depth)], target)
                if worst is None or d < worst[0]:
                    worst = (d, m)
            out.append(
                compare_values(
                    "integral-convergence",
                    {"p": p, "x": x, "N": n_depth, "m_max": m_max},
                    sums[(worst[1], n_depth)],
                    ctx.from_fraction(euler.euler_poly(worst[1], x), relprec=prec),
                    required_depth=n_depth,
                    reference_depth=n_depth,
                    note=f"worst m={worst[1]}",
                )
            )
        return out

    return [
        ("integral-convergence", lambda p=p, x=x: run(p, x))
        for p in cfg.primes
        for x in xs
    ]


def _tasks_zeta_one(cfg: VerifyConfig) -> list[Task]:
    tasks: list[Task] = []
    per_p = {3: 17, 5: 17, 7: 16}

    def run(p: int, x: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        val = zeta_czp(ctx, 1, x, cfg.budget())
        return [
            compare_values(
                "zeta-one",
                {"p": p, "x": x},
                val,
                ctx.from_int(1, relprec=cfg.workprec),
                required_depth=cfg.workprec,
            )
        ]

    for p in cfg.primes:
        rng = cfg.rng("zeta-one", p)
        for _ in range(per_p.get(p, 16)):
            e = rng.choice((1, 1, 2, 3))
            num = rng.randrange(1, p**6)
            while num % p == 0:
                num = rng.randrange(1, p**6)
            if rng.random() < 0.5:
                num = -num
            x = Fraction(num, p**e)
            tasks.append(("zeta-one", lambda p=p, x=x: run(p, x)))
    return tasks


def _tasks_special_neg(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, x: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        worst = None
        for m in range(1, 9):
            series = zeta_czp(ctx, 1 - m, x, cfg.budget())
            exact = zeta_special_neg(ctx, m, x)
            d = agreement_depth(series, exact)
            if worst is None or d < worst[0]:
                worst = (d, m, series, exact)
        return [
            compare_values(
                "special-neg",
                {"p": p, "x": x, "m_max": 8},
                worst[2],
                worst[3],
                required_depth=cfg.workprec,
                note=f"worst m={worst[1]}",
            )
        ]

    return [
        ("special-neg", lambda p=p, x=x: run(p, x))
        for p in cfg.primes
        for x in _x_grid(p)
    ]


def _tasks_special_pos(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, m: int, x: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        depth = cfg.depth_czp()
        params = {"p": p, "m": m, "x": x, "N": depth}
        return _guard(
            "special-pos",
            params,
            lambda: [
                compare_values(
                    "special-pos",
                    params,
                    *zeta_special_pos(ctx, m, x, depth, cfg.budget()),
                    required_depth=depth - cfg.c("special-pos"),
                    reference_depth=depth,
                )
            ],
        )

    return [
        ("special-pos", lambda p=p, m=m, x=x: run(p, m, x))
        for p in cfg.primes
        for m in (1, 2, 3)
        for x in (Fraction(1, p), Fraction(2, p))
    ]


def _tasks_oracle_czp(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, s, x: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        n_max = cfg.depth_czp()
        depths = tuple(range(2, n_max + 1))
        series = zeta_czp(ctx, s, x, cfg.budget())
        sums = kernels.hurwitz_sums(p, ctx.internal_prec, x, s, depths)
        slack = cfg.c("oracle-czp")
        worst = None
        for n_depth in depths:
            d = agreement_depth(series, sums[n_depth])
            margin = d - n_depth
            if worst is None or margin < worst[0]:
                worst = (margin, n_depth)
        n_depth = worst[1]
        return [
            compare_values(
                "oracle-czp",
                {"p": p, "s": s, "x": x, "N": n_depth},
                series,
                sums[n_depth],
                required_depth=n_depth - slack,
                reference_depth=n_depth,
                note=f"min margin over N=2..{n_max}: {worst[0]}",
            )
        ]

    return [
        ("oracle-czp", lambda p=p, s=s, x=x: run(p, s, x))
        for p in cfg.primes
        for s in _s_grid(cfg, "oracle-czp", p)
        for x in _x_grid(p)
    ]


def _tasks_oracle_char(cfg: VerifyConfig) -> list[Task]:
    tasks: list[Task] = []

    def run(p: int, v: int, k: int, s, x: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        depth = cfg.depth_char()
        series = zeta_char(ctx, chi, s, x, cfg.budget())
        oracle = zeta_char_oracle(ctx, chi, s, x, depth)
        return [
            compare_values(
                "oracle-char",
                {"p": p, "char": chi.label, "s": s, "x": x, "N": depth},
                series,
                oracle,
                required_depth=depth - cfg.c("oracle-char"),
                reference_depth=depth,
            )
        ]

    for p in cfg.primes:
        rng = cfg.rng("oracle-char", p)
        s_values = [0, 2, rng.randrange(1, p**12)]
        for v in (1, 2):
            for k in _char_ks(p):
                for s in s_values:
                    for x in (0, 1):
                        tasks.append(
                            (
                                "oracle-char",
                                lambda p=p, v=v, k=k, s=s, x=x: run(p, v, k, s, x),
                            )
                        )
    return tasks


def _tasks_ell_oracle(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, v: int, k: int, s) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        depth = cfg.depth_char()
        return [
            compare_values(
                "ell-oracle",
                {"p": p, "char": chi.label, "s": s, "N": depth},
                ell(ctx, chi, s, cfg.budget()),
                ell_limit_oracle(ctx, chi, s, depth),
                required_depth=depth - cfg.c("ell-oracle"),
                reference_depth=depth,
            )
        ]

    tasks: list[Task] = []
    for p in cfg.primes:
        odd_ks = [k for k in (1, 3) if k <= p - 2]
        for v in (1, 2):
            for k in odd_ks:
                for s in (0, 2, 5):
                    tasks.append(
                        ("ell-oracle", lambda p=p, v=v, k=k, s=s: run(p, v, k, s))
                    )
    return tasks


def _tasks_ell_even_zero(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, v: int, k: int, s) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        value = ell(ctx, chi, s, cfg.budget())
        return [
            compare_values(
                "ell-even-zero",
                {"p": p, "char": chi.label, "s": s},
                value,
                ctx.bounded_zero(cfg.workprec),
                required_depth=cfg.workprec,
            )
        ]

    tasks: list[Task] = []
    for p in cfg.primes:
        rng = cfg.rng("ell-even-zero", p)
        even_ks = [k for k in range(0, p - 1, 2)]
        s_values = [0, 1, -1, 2, rng.randrange(1, p**12)]
        for v in (1, 2):
            for k in even_ks:
                for s in s_values:
                    tasks.append(
                        ("ell-even-zero", lambda p=p, v=v, k=k, s=s: run(p, v, k, s))
                    )
    return tasks


def _tasks_functional_czp(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, s, x: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        sp = ctx.coerce(s)
        lhs = zeta_czp(ctx, sp, x + 1, cfg.budget()) + zeta_czp(ctx, sp, x, cfg.budget())
        xe = ctx.from_fraction(x)
        rhs = 2 * xe / ctx.omega_v(xe) * ctx.angle_power(xe, -sp)
        return [
            compare_values("functional-czp", {"p": p, "s": s, "x": x}, lhs, rhs)
        ]

    return [
        ("functional-czp", lambda p=p, s=s, x=x: run(p, s, x))
        for p in cfg.primes
        for s in _s_grid(cfg, "functional-czp", p)
        for x in _x_grid(p)
    ]


def _tasks_reflection_czp(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, s, x: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        lhs, rhs = reflection_czp(ctx, s, x, cfg.budget())
        return [
            compare_values("reflection-czp", {"p": p, "s": s, "x": x}, lhs, rhs)
        ]

    return [
        ("reflection-czp", lambda p=p, s=s, x=x: run(p, s, x))
        for p in cfg.primes
        for s in _s_grid(cfg, "reflection-czp", p)
        for x in _x_grid(p)
    ]


def _tasks_distribution_czp(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, s, x: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        n_parts = 5 if p == 3 else 3
        forms = distribution_czp_forms(ctx, s, x, n_parts, cfg.budget())
        params = {"p": p, "s": s, "x": x, "N": n_parts}
        out = [
            compare_values("distribution-czp", params, forms["lhs"], forms["rhs"])
        ]
        if cfg.report_both_forms:
            out.append(
                compare_values(
                    "distribution-czp-unscaled",
                    params,
                    forms["lhs"],
                    forms["rhs_unscaled"],
                    informational=True,
                    note="residual without the <N>^(s-1) factor, recorded only",
                )
            )
        return out

    return [
        ("distribution-czp", lambda p=p, s=s, x=x: run(p, s, x))
        for p in cfg.primes
        for s in [0, 2, 3, cfg.rng("distribution-czp", p).randrange(1, p**12)]
        for x in _x_grid(p)
    ]


def _tasks_derivative_czp(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, s, x: Fraction, k: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        h = p**k
        fd = (
            zeta_czp(ctx, s, x + h, cfg.budget()) - zeta_czp(ctx, s, x, cfg.budget())
        ) / ctx.from_int(h)
        formula = dzeta_dx(ctx, s, x, cfg.budget())
        return [
            compare_values(
                "derivative-czp",
                {"p": p, "s": s, "x": x, "h": f"{p}^{k}"},
                fd,
                formula,
                required_depth=k - cfg.c("derivative-czp"),
                reference_depth=k,
            )
        ]

    tasks: list[Task] = []
    for p in cfg.primes:
        rng = cfg.rng("derivative-czp", p)
        for s in (0, 2, rng.randrange(1, p**6)):
            for x in (Fraction(1, p), Fraction(2, p)):
                for k in cfg.fd_exponents():
                    tasks.append(
                        ("derivative-czp", lambda p=p, s=s, x=x, k=k: run(p, s, x, k))
                    )
    return tasks


def _tasks_shifted_expansion(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, s, x: Fraction, u: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        lhs = zeta_shifted(ctx, s, x, u, cfg.budget())
        rhs = zeta_czp(ctx, s, x + u, cfg.budget())
        return [
            compare_values("shifted-expansion", {"p": p, "s": s, "x": x, "u": u}, lhs, rhs)
        ]

    def run_oracle(p: int, s, x: Fraction, u: Fraction) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        depth = cfg.depth_czp()
        lhs = zeta_shifted(ctx, s, x, u, cfg.budget())
        oracle = zeta_czp_oracle(ctx, s, x + u, depth)
        return [
            compare_values(
                "shifted-expansion-oracle",
                {"p": p, "s": s, "x": x, "u": u, "N": depth},
                lhs,
                oracle,
                required_depth=depth - cfg.c("oracle-czp"),
                reference_depth=depth,
            )
        ]

    tasks: list[Task] = []
    for p in cfg.primes:
        rng = cfg.rng("shifted-expansion", p)
        for s in (0, 2, rng.randrange(1, p**12)):
            for x in _x_grid(p):
                for u in (Fraction(1), Fraction(1, 2)):
                    tasks.append(
                        (
                            "shifted-expansion",
                            lambda p=p, s=s, x=x, u=u: run(p, s, x, u),
                        )
                    )
        tasks.append(
            (
                "shifted-expansion-oracle",
                lambda p=p: run_oracle(p, 2, Fraction(1, p * p), Fraction(1, 2)),
            )
        )
    return tasks


def _tasks_raabe_czp(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, s, x: Fraction, with_oracle: bool) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        forms = raabe_closed_forms(ctx, s, x, cfg.budget())
        params = {"p": p, "s": s, "x": x}
        out = [
            compare_values(
                "raabe-czp", params, forms["termwise"], forms["closed"]
            )
        ]
        if cfg.report_both_forms:
            out.append(
                compare_values(
                    "raabe-czp-variant",
                    params,
                    forms["termwise"],
                    forms["variant"],
                    informational=True,
                    note="residual of the alternative closed form, recorded only",
                )
            )
        if with_oracle:
            depth = cfg.depth_raabe(p)
            oracle = integral_of_zeta_oracle(ctx, s, x, depth, cfg.budget())
            out.append(
                compare_values(
                    "raabe-czp-oracle",
                    {**params, "N": depth},
                    forms["termwise"],
                    oracle,
                    required_depth=depth - cfg.c("raabe-czp-oracle"),
                    reference_depth=depth,
                )
            )
        return out

    tasks: list[Task] = []
    for p in cfg.primes:
        rng = cfg.rng("raabe-czp", p)
        s_values = [0, 2, 3, rng.randrange(1, p**12)]
        for i, s in enumerate(s_values):
            for j, x in enumerate((Fraction(1, p), Fraction(2, p))):
                with_oracle = i == 1 and j == 0
                tasks.append(
                    (
                        "raabe-czp",
                        lambda p=p, s=s, x=x, w=with_oracle: run(p, s, x, w),
                    )
                )
    return tasks


def _char_grid(cfg: VerifyConfig) -> list[tuple[int, int, int, object, int]]:
    """(p, v, k, s, x) gridpoints for the x-in-Z_p identity suite."""
    points = []
    for p in cfg.primes:
        for v in (1, 2):
            for k in _char_ks(p):
                for s in (0, 1, -1, 2):
                    for x in (0, 1, 2, p):
                        points.append((p, v, k, s, x))
    return points


def _tasks_char_suite(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, v: int, k: int, s, x: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        n_parts = 5 if p == 3 else 3
        reports = functional_reflection_distribution(
            ctx, chi, s, x, n_parts, cfg.budget()
        )
        if not cfg.report_both_forms:
            reports = [r for r in reports if r.identity != "distribution-char-unscaled"]
        return reports

    return [
        ("char-suite", lambda p=p, v=v, k=k, s=s, x=x: run(p, v, k, s, x))
        for (p, v, k, s, x) in _char_grid(cfg)
    ]


def _tasks_special_char(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, v: int, k0: int, k: int, x: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k0)
        lhs, rhs = zeta_char_special(ctx, chi, k, x, cfg.budget())
        return [
            compare_values(
                "special-char",
                {"p": p, "char": chi.label, "k": k, "x": x},
                lhs,
                rhs,
            )
        ]

    tasks: list[Task] = []
    for p in cfg.primes:
        for v, ks in ((1, (1, 2, 3, 4, 5, 6)), (2, (1, 2))):
            for k0 in (0, 1):
                for k in ks:
                    for x in (0, 1):
                        tasks.append(
                            (
                                "special-char",
                                lambda p=p, v=v, k0=k0, k=k, x=x: run(p, v, k0, k, x),
                            )
                        )
    return tasks


def _tasks_derivative_char(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, v: int, k: int, s, x: int, h_exp: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        h = p**h_exp
        fd = (
            zeta_char(ctx, chi, s, x + h, cfg.budget())
            - zeta_char(ctx, chi, s, x, cfg.budget())
        ) / ctx.from_int(h)
        formula = dzeta_char_dx(ctx, chi, s, x, cfg.budget())
        return [
            compare_values(
                "derivative-char",
                {"p": p, "char": chi.label, "s": s, "x": x, "h": f"{p}^{h_exp}"},
                fd,
                formula,
                required_depth=h_exp - cfg.c("derivative-char"),
                reference_depth=h_exp,
            )
        ]

    def run_corollary(p: int, v: int, k: int, x: int) -> list[VerificationReport]:
        # d/dx at (chi omega, 0, x) collapses to the plain character sum
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        lhs = dzeta_char_dx(ctx, chi.twist(1), 0, x, cfg.budget())
        rhs = None
        for j in range(p**v):
            t = char_eval(ctx, chi, x + j)
            if j % 2 == 1:
                t = -t
            rhs = t if rhs is None else rhs + t
        return [
            compare_values(
                "derivative-char-at-zero",
                {"p": p, "char": chi.label, "x": x},
                lhs,
                rhs.cap_absprec(cfg.workprec),
            )
        ]

    tasks: list[Task] = []
    for p in cfg.primes:
        for v in (1, 2):
            for k in (0, 1):
                for s in (0, 2):
                    for x in (0, 1):
                        for h_exp in cfg.fd_exponents()[:2]:
                            tasks.append(
                                (
                                    "derivative-char",
                                    lambda p=p, v=v, k=k, s=s, x=x, h=h_exp: run(
                                        p, v, k, s, x, h
                                    ),
                                )
                            )
                tasks.append(
                    (
                        "derivative-char-at-zero",
                        lambda p=p, v=v, k=k: run_corollary(p, v, k, 1),
                    )
                )
    return tasks


def _tasks_representation_char(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, v: int, k: int, s, x: int, factor: int, power: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        lhs, rhs = representation_pair(ctx, chi, s, x, factor, power, cfg.budget())
        kind = f"{factor}*p^(v+{power})" if factor > 1 else f"p^(v+{power})"
        return [
            compare_values(
                "representation-char",
                {"p": p, "char": chi.label, "s": s, "x": x, "M": kind},
                lhs,
                rhs,
            )
        ]

    tasks: list[Task] = []
    for p in cfg.primes:
        factor = 5 if p == 3 else 3
        for v in (1, 2):
            for k in (0, 1):
                for s in (0, 2):
                    for x in (0, 1):
                        tasks.append(
                            (
                                "representation-char",
                                lambda p=p, v=v, k=k, s=s, x=x, f=factor: run(
                                    p, v, k, s, x, f, 0
                                ),
                            )
                        )
                        tasks.append(
                            (
                                "representation-char",
                                lambda p=p, v=v, k=k, s=s, x=x: run(p, v, k, s, x, 1, 1),
                            )
                        )
    return tasks


def _tasks_power_series_char(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, v: int, k: int, s, x_mult: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        x = x_mult * p**v
        decay = v
        terms = -(-((cfg.workprec + 2) * (p - 1)) // (decay * (p - 1) - 1)) + 2
        series = power_series_zeta(ctx, chi, s, x, terms, cfg.budget())
        direct = zeta_char(ctx, chi, s, x, cfg.budget())
        return [
            compare_values(
                "power-series-char",
                {"p": p, "char": chi.label, "s": s, "x": x, "K": terms},
                series,
                direct,
            )
        ]

    return [
        (
            "power-series-char",
            lambda p=p, v=v, k=k, s=s, m=m: run(p, v, k, s, m),
        )
        for p in cfg.primes
        for v in (1, 2)
        for k in (0, 1)
        for s in (0, 2)
        for m in (1, 2)
    ]


def _tasks_raabe_char(cfg: VerifyConfig) -> list[Task]:
    def run(p: int, v: int, k: int, s, x: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        depth = cfg.depth_raabe(p)
        lhs, rhs = raabe_char(ctx, chi, s, x, depth, cfg.budget())
        return [
            compare_values(
                "raabe-char",
                {"p": p, "char": chi.label, "s": s, "x": x, "N": depth},
                lhs,
                rhs,
                required_depth=depth - cfg.c("raabe-char-oracle"),
                reference_depth=depth,
            )
        ]

    combos = {
        3: [(1, 0, 1, 2), (1, 1, 0, 1), (2, 1, 2, 0)],
        5: [(1, 0, 1, 2), (1, 1, 0, 1)],
        7: [(1, 1, 0, 1), (1, 0, 2, 0)],
    }
    tasks: list[Task] = []
    for p in cfg.primes:
        for (v, k, s, x) in combos.get(p, [(1, 0, 1, 1)]):
            tasks.append(
                ("raabe-char", lambda p=p, v=v, k=k, s=s, x=x: run(p, v, k, s, x))
            )
    return tasks


def _tasks_change_of_variable(cfg: VerifyConfig) -> list[Task]:
    cases = [
        (3, 1, 0, (0, 1), 0),
        (5, 1, 2, (0, 0, 1), 2),
        (5, 1, 0, (1,), 0),
        (7, 1, 1, (0, 1), 1),
    ]

    def run(p: int, v: int, k: int, coeffs, x: int) -> list[VerificationReport]:
        ctx = cfg.ctx(p)
        chi = DirichletCharacter(p, v, k)
        depth = min(cfg.oracle_depth, 4)
        f = Integrand.polynomial(coeffs)
        lhs, rhs = change_of_variable(ctx, chi, f, x, depth)
        return [
            compare_values(
                "change-of-variable",
                {"p": p, "char": chi.label, "f": list(map(str, coeffs)), "x": x, "N": depth},
                lhs,
                rhs,
                required_depth=depth - cfg.c("change-of-variable"),
                reference_depth=depth,
            )
        ]

    return [
        ("change-of-variable", lambda c=case: run(*c))
        for case in cases
        if case[0] in cfg.primes
    ]


_BUILDERS: dict[str, Callable[[VerifyConfig], list[Task]]] = {
    "euler-exact": _tasks_euler_exact,
    "alternating-sum": _tasks_alternating_sum,
    "shift-integral": _tasks_shift_integral,
    "integral-convergence": _tasks_integral_convergence,
    "zeta-one": _tasks_zeta_one,
    "special-neg": _tasks_special_neg,
    "special-pos": _tasks_special_pos,
    "oracle-czp": _tasks_oracle_czp,
    "oracle-char": _tasks_oracle_char,
    "ell-oracle": _tasks_ell_oracle,
    "ell-even-zero": _tasks_ell_even_zero,
    "functional-czp": _tasks_functional_czp,
    "reflection-czp": _tasks_reflection_czp,
    "distribution-czp": _tasks_distribution_czp,
    "derivative-czp": _tasks_derivative_czp,
    "shifted-expansion": _tasks_shifted_expansion,
    "raabe-czp": _tasks_raabe_czp,
    "char-suite": _tasks_char_suite,
    "special-char": _tasks_special_char,
    "derivative-char": _tasks_derivative_char,
    "representation-char": _tasks_representation_char,
    "power-series-char": _tasks_power_series_char,
    "raabe-char": _tasks_raabe_char,
    "change-of-variable": _tasks_change_of_variable,
}

IDENTITY_NAMES = tuple(_BUILDERS)


def run_verify(
    cfg: VerifyConfig, names: list[str] | None = None, threads: int = 1
) -> list[VerificationReport]:
    """Run the selected identities and return reports in grid order."""
    selected = list(IDENTITY_NAMES) if not names else names
    unknown = [n for n in selected if n not in _BUILDERS]
    if unknown:
        raise PadicError(f"unknown identities: {', '.join(unknown)}")
    tasks: list[Task] = []
    for name in selected:
        tasks.extend(_BUILDERS[name](cfg))
    if threads <= 1:
        chunks = [fn() for _, fn in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda t: t[1](), tasks))
    return [rep for chunk in chunks for rep in chunk]


def calibrate(cfg: VerifyConfig, threads: int = 1) -> dict[str, int]:
    """Measure the oracle slack constants on the standard grids.

    Returns max(0, reference_depth - agreement_depth) per family, the
    smallest integers making every oracle comparison pass.
    """
    wide = replace(cfg, slack={name: 10**6 for name in CALIBRATED_FAMILIES})
    family_sources = {
        "oracle-czp": ["oracle-czp", "shifted-expansion"],
        "oracle-char": ["oracle-char"],
        "ell-oracle": ["ell-oracle"],
        "special-pos": ["special-pos"],
        "change-of-variable": ["change-of-variable"],
        "derivative-czp": ["derivative-czp"],
        "derivative-char": ["derivative-char"],
        "raabe-czp-oracle": ["raabe-czp"],
        "raabe-char-oracle": ["raabe-char"],
    }
    measured = {name: 0 for name in CALIBRATED_FAMILIES}
    report_family = {
        "oracle-czp": "oracle-czp",
        "shifted-expansion-oracle": "oracle-czp",
        "oracle-char": "oracle-char",
        "ell-oracle": "ell-oracle",
        "special-pos": "special-pos",
        "change-of-variable": "change-of-variable",
        "derivative-czp": "derivative-czp",
        "derivative-char": "derivative-char",
        "raabe-czp-oracle": "raabe-czp-oracle",
        "raabe-char": "raabe-char-oracle",
    }
    names = sorted({n for group in family_sources.values() for n in group})
    for rep in run_verify(wide, names, threads):
        family = report_family.get(rep.identity)
        if family is None or rep.reference_depth is None:
            continue
        depth = rep.agreement_depth
        if depth is None:
            continue
        measured[family] = max(measured[family], rep.reference_depth - depth)
    return measured
