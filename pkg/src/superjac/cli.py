"""Command-line front end.

Every subcommand prints one JSON document (or a CSV table) and exits with
status 0 only if all of its checks pass.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

import click

from . import bsdinv, charsums, groupring, heights, lfunction, monodromy, points_descent
from .ffield import DEFAULT_CAP, FieldCapError, build_field, prime_power
from .lfunction import LPoly

SCHEMA = 1
CACHE_ENV = "SUPERJAC_CACHE_DIR"
SUBCOMMANDS = ("lfunction", "rank", "heights", "module", "descent", "bsd", "monodromy", "report")


class RegimeError(ValueError):
    pass


@dataclass
class InstanceParams:
    p: Optional[int] = None
    q: Optional[int] = None
    r: Optional[int] = None
    d: Optional[int] = None
    ell: Optional[int] = None
    nu: Optional[int] = field(default=None, init=False)

    def __post_init__(self):
        if self.q is not None:
            qp, _ = prime_power(self.q)
            if self.p is None:
                self.p = qp
            elif qp != self.p:
                raise click.UsageError(f"q = {self.q} is not a power of p = {self.p}")
        if self.p is not None and self.d is not None:
            k, x = 0, 1
            while x + 1 < self.d:
                x *= self.p
                k += 1
            if x + 1 == self.d and k >= 1:
                self.nu = k

    @property
    def r_divides_d(self) -> bool:
        return self.r is not None and self.d is not None and self.d % self.r == 0

    @property
    def d_eq_p_nu_plus_1(self) -> bool:
        return self.nu is not None

    @property
    def d_divides_q_minus_1(self) -> bool:
        return self.q is not None and self.d is not None and (self.q - 1) % self.d == 0

    def as_dict(self):
        return {
            "p": self.p, "q": self.q, "r": self.r, "d": self.d, "ell": self.ell, "nu": self.nu,
            "flags": {
                "r_divides_d": self.r_divides_d,
                "d_eq_p_nu_plus_1": self.d_eq_p_nu_plus_1,
                "d_divides_q_minus_1": self.d_divides_q_minus_1,
            },
        }


@dataclass
class Options:
    max_n: Optional[int] = None
    cache_dir: Optional[str] = None
    field_cap: int = DEFAULT_CAP


class Report:
    def __init__(self, params: InstanceParams):
        self.params = params
        self.results = {}
        self.checks = {}
        self.regime = {}
        self.tables = {}

    def check(self, name, passed, **values):
        entry = {"pass": bool(passed)}
        entry.update(values)
        self.checks[name] = entry

    def guarded(self, name, fn):
        """Run fn(); an arithmetic failure becomes a failed check."""
        try:
            return fn()
        except ArithmeticError as exc:
            self.check(name, False, error=str(exc))
            return None

    @property
    def ok(self):
        return all(c["pass"] for c in self.checks.values())

    def to_json(self):
        doc = {
            "schema": SCHEMA,
            "instance": self.params.as_dict(),
            "results": self.results,
            "checks": self.checks,
        }
        if self.regime:
            doc["regime"] = self.regime
        return json.dumps(encode(doc), sort_keys=True, indent=2) + "\n"


def encode(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, LPoly):
        return list(obj.coeffs)
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): encode(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: encode(getattr(obj, k)) for k in obj.__dataclass_fields__}
    return int(obj)


# requirement helpers ----------------------------------------------------------

def need(params, *names):
    missing = [n for n in names if getattr(params, n) is None]
    if missing:
        raise click.UsageError("missing parameter(s): " + ", ".join("--" + n for n in missing))


def require(cond, msg):
    if not cond:
        raise RegimeError(msg)


def _coprime(params):
    require((params.r * params.d) % params.p != 0, f"p = {params.p} must not divide rd")


# sections ---------------------------------------------------------------------

def section_lfunction(rep: Report, opts: Options):
    P = rep.params
    need(P, "q", "r", "d")
    _coprime(P)
    q, d, r = P.q, P.d, P.r
    closed = rep.guarded("closed_form_L", lambda: lfunction.closed_form_L(
        q, d, r, cap=opts.field_cap, cache_dir=opts.cache_dir))
    N = opts.max_n if opts.max_n is not None else lfunction.degree_bound(d, r)
    brute = rep.guarded("brute_force_L", lambda: lfunction.brute_force_L(
        q, d, r, N, cap=opts.field_cap, cache_dir=opts.cache_dir))
    deg = lfunction.degree_bound(d, r)
    oset = lfunction.orbit_decomposition(q, d, r)
    rep.results["lfunction"] = {
        "closed_form": closed,
        "brute_force": brute,
        "truncation": N,
        "degree_formula": deg,
        "orbits": [list(o) for o in oset.orbits],
    }
    if closed is not None:
        rep.check("degree", closed.degree == deg == len(oset.S), degree=closed.degree, expected=deg)
    if closed is not None and brute is not None:
        if N >= deg:
            same = closed.coeffs == brute.coeffs
        else:
            same = closed.coeffs[:N + 1] == brute.coeffs[:N + 1]
        rep.check("dual_path_L", same, closed=closed, brute=brute)
    rep.tables["lfunction"] = (["n", "closed_form", "brute_force"], [
        [n, closed.coeffs[n] if closed and n < len(closed.coeffs) else 0,
         brute.coeffs[n] if brute and n < len(brute.coeffs) else 0]
        for n in range(max(len(closed.coeffs) if closed else 1, len(brute.coeffs) if brute else 1))])
    return closed


def section_rank(rep: Report, opts: Options, closed=None):
    P = rep.params
    need(P, "q", "r", "d")
    _coprime(P)
    q, d, r = P.q, P.d, P.r
    if closed is None:
        closed = rep.guarded("closed_form_L", lambda: lfunction.closed_form_L(
            q, d, r, cap=opts.field_cap, cache_dir=opts.cache_dir))
    out = {}
    if closed is not None:
        rho, M, lead = lfunction.analytic_rank(closed)
        out.update({"analytic_rank": rho, "quotient": M, "leading": lead})
        nb = lfunction.balanced_count(q, d, r)
        out["balanced_orbits"] = nb
        rep.check("rank_le_balanced", rho <= nb, rank=rho, balanced=nb)
    try:
        formula = lfunction.rank_formula(q, d, r)
        out["rank_formula"] = formula
        if closed is not None:
            rep.check("rank_formula", formula == out["analytic_rank"], formula=formula,
                      analytic=out["analytic_rank"])
    except ValueError as exc:
        rep.regime["rank_formula"] = str(exc)
    if P.r_divides_d and P.d_eq_p_nu_plus_1 and P.d_divides_q_minus_1 and closed is not None:
        expected = (r - 1) * (d - 2)
        rep.check("rank_exact", out["analytic_rank"] == expected, expected=expected)
        if r % 2 and r > 2 and _is_prime(r):
            inst = points_descent.make_instance(P.p, P.nu, r, q)
            dr = rep.guarded("descent_rank", lambda: points_descent.descent_rank_bound(inst))
            if dr is not None:
                out["descent_rank"] = dr["rank_Z"]
                out["descent_conditional"] = dr["conditional"]
                rep.check("descent_rank", dr["rank_Z"] == out["analytic_rank"], descent=dr["rank_Z"])
    else:
        rep.regime["rank_exact"] = "needs r | d, d = p^nu + 1 and d | q - 1"
    rep.results["rank"] = out
    rep.tables["rank"] = (["key", "value"], [[k, out[k]] for k in sorted(out)
                                             if isinstance(out[k], (int, bool))])


def _is_prime(n):
    from sympy import isprime
    return isprime(n)


def _need_r_div_d(P):
    need(P, "r", "d")
    require(P.d >= 3 and P.r >= 2, "needs d >= 3 and r >= 2")
    require(P.r_divides_d, f"needs r | d (r = {P.r}, d = {P.d})")


def section_heights(rep: Report, opts: Options):
    P = rep.params
    _need_r_div_d(P)
    d, r = P.d, P.r
    table = heights.height_table(d, r)
    from . import linalg
    G = heights.gram_matrix(d, r)
    rk = linalg.rank(G)
    rep.results["heights"] = {
        "table": table,
        "gram_rank": rk,
        "regime_note": None if P.d_eq_p_nu_plus_1 else "table is the closed form; the height "
                       "interpretation is established for d = p^nu + 1",
    }
    rep.check("gram_rank", rk == (r - 1) * (d - 2), rank=rk, expected=(r - 1) * (d - 2))
    rep.check("gram_kills_ideal", heights.kernel_check(d, r))
    rep.check("proportionality", rep.guarded("proportionality", lambda: heights.proportionality_check(d, r)) or False)
    di = rep.guarded("disc_ideal", lambda: heights.disc_ideal(d, r))
    if di is not None:
        rep.check("disc_ideal", True, value=di)
    dv = rep.guarded("disc_V_mod_torsion", lambda: heights.disc_V_mod_torsion(d, r))
    if dv is not None:
        rep.check("disc_V_mod_torsion", True, value=dv)
    rep.check("positive_definite", heights.positive_definite_on_complement(d, r))
    rep.tables["heights"] = (["i", "j", "num", "den"],
                             [[i, j, v.numerator, v.denominator] for (i, j), v in sorted(table.items())])


def section_module(rep: Report, opts: Options):
    P = rep.params
    _need_r_div_d(P)
    d, r = P.d, P.r
    nonzero, free = groupring.quotient_structure(d, r)
    ts = groupring.torsion_structure(d, r)
    exp = groupring.expected_torsion(r)
    rep.results["module"] = {
        "invariant_factors": nonzero,
        "free_rank": free,
        "torsion_factors": list(ts),
        "torsion_order": ts[0] * ts[1] * ts[2],
    }
    rep.check("torsion_structure", tuple(ts) == exp, value=list(ts), expected=list(exp))
    rep.check("torsion_order", ts[0] * ts[1] * ts[2] == r ** 3)
    rep.check("free_rank", free == (r - 1) * (d - 2), value=free)
    rep.check("unit_factors", sum(1 for f in nonzero if f == 1) == d + 2 * r - 5)
    rep.check("torsion_identities", groupring.check_torsion_identities(d, r))
    gens_killed = all(groupring.splitting_rho(d, r, g).is_zero() for g in groupring.ideal_generators(d, r))
    rep.check("splitting_kills_ideal", gens_killed)
    pairing = {}
    ok = True
    for i in range(d):
        for j in range(r):
            v = rep.guarded("group_pairing", lambda: groupring.group_pairing(d, r, (i, j)))
            ok &= v is not None
            pairing[(i, j)] = v
    rep.check("group_pairing_dual_path", ok)
    rep.results["module"]["group_pairing"] = pairing
    rep.tables["module"] = (["k", "factor"], [[k, f] for k, f in enumerate(nonzero)])


def section_descent(rep: Report, opts: Options):
    P = rep.params
    need(P, "p", "r", "d")
    require(P.d_eq_p_nu_plus_1, f"needs d = p^nu + 1 (p = {P.p}, d = {P.d})")
    require(P.r_divides_d, "needs r | d")
    q = P.q if P.q is not None else P.p ** (2 * P.nu)
    require((q - 1) % P.d == 0, "needs d | q - 1")
    inst = points_descent.make_instance(P.p, P.nu, P.r, q)
    d, r = inst.d, inst.r
    rep.check("points_on_curve", all(points_descent.on_curve(inst, i, j)
                                     for i in range(d) for j in range(r)))
    rep.check("vanishing", points_descent.vanishing_checks(inst))
    triples = [points_descent.xT_image(inst, (i, j)) for i in range(d) for j in range(r)]
    triples += [points_descent.xT_image(inst, w) for w in ("Q1", "Q2", "Dinf")]
    rep.check("norm_relation", all(points_descent.norm_relation_holds(inst, t) for t in triples))
    prm = points_descent.pr_matrix(inst)
    rep.check("pr_identity", all(prm[i][k] == int(i == k) for i in range(d) for k in range(d)))
    q1 = points_descent.pr_projection(inst, points_descent.xT_image(inst, "Q1"))
    q2 = points_descent.pr_projection(inst, points_descent.xT_image(inst, "Q2"))
    rep.check("torsion_consistency", points_descent.torsion_consistency(inst))
    out = {"pr_matrix": prm, "pr_Q1": q1, "pr_Q2": q2, "q": q}
    if r % 2 and _is_prime(r):
        dr = rep.guarded("descent_rank", lambda: points_descent.descent_rank_bound(inst))
        if dr is not None:
            out["rank_Zzeta"] = dr["rank_Zzeta"]
            out["rank_Z"] = dr["rank_Z"]
            out["conditional"] = dr["conditional"]
            rep.check("descent_rank", dr["rank_Z"] == (r - 1) * (d - 2), value=dr["rank_Z"])
    else:
        rep.regime["descent_rank"] = "needs r an odd prime"
    rep.results["descent"] = out
    rep.tables["descent"] = (["point"] + [f"pr{k}" for k in range(d)],
                             [[f"P{i}0"] + row for i, row in enumerate(prm)] + [["Q1"] + q1, ["Q2"] + q2])


def section_bsd(rep: Report, opts: Options):
    P = rep.params
    need(P, "p", "q", "r", "d")
    require(P.r_divides_d, "needs r | d")
    require(P.d_eq_p_nu_plus_1, "needs d = p^nu + 1")
    require(P.d_divides_q_minus_1, "needs d | q - 1")
    p, q, d, r, nu = P.p, P.q, P.d, P.r, P.nu
    local = {pl: bsdinv.local_data(d, r, pl) for pl in bsdinv.PLACES}
    rep.check("local_dimensions", all(x.a + x.m + x.g == r - 1 for x in local.values()))
    rep.check("conductor_degree", rep.guarded(
        "conductor_degree", lambda: bsdinv.conductor_degree_check(d, r)) == lfunction.degree_bound(d, r))
    tau = rep.guarded("tamagawa", lambda: bsdinv.tamagawa(q, d, r))
    integ = rep.guarded("integrality", lambda: bsdinv.integrality_quantity(d, r))
    ratio = bsdinv.sha_index_ratio(p, nu, q, d, r)
    cons = rep.guarded("bsd_consistency", lambda: bsdinv.bsd_consistency(p, nu, q, d, r))
    if cons is not None:
        rep.check("bsd_consistency", cons["ok"], value=cons["ratio"], expected=cons["expected"])
    if integ is not None:
        rep.check("integrality", True, value=integ)
    cart = bsdinv.cartier_matrix(p, r)
    rep.check("cartier_ordinary", all(any(c) for *_, c in cart))
    rep.results["bsd"] = {
        "local_data": local,
        "tamagawa": tau,
        "integrality_quantity": integ,
        "sha_index_ratio": ratio,
        "consistency": cons,
        "cartier": [{"i": i, "a": a, "b": b, "c": list(c)} for i, a, b, c in cart],
        "inputs": {"ns_torsion": 1, "note": "Neron-Severi torsion taken as trivial"},
    }
    rep.tables["bsd"] = (["place", "c", "d_v", "a", "m", "g"],
                         [[x.place, x.c, x.d_v, x.a, x.m, x.g] for x in local.values()])


def section_monodromy(rep: Report, opts: Options):
    P = rep.params
    need(P, "r", "ell")
    r, ell = P.r, P.ell
    try:
        decomp = monodromy.lambda_decomposition(r, ell)
        label, order, factors = monodromy.predicted_monodromy(r, ell)
    except ValueError as exc:
        raise RegimeError(str(exc))
    out = {
        "primes": decomp,
        "structure": label,
        "order_G_chi": order,
        "factors": factors,
        "G": "mu_r . G_chi",
        "new_part_dimensions": monodromy.new_part_dimensions(r),
        "torsion_vanishing": {
            "abelian": monodromy.torsion_vanishing(r, ell, "abelian"),
            "solvable": monodromy.torsion_vanishing(r, ell, "solvable"),
            "solvable_new_part": monodromy.torsion_vanishing_new_part(r, ell, "solvable"),
        },
    }
    if ell == 3:
        out["flambda_f3_count"] = monodromy.flambda_f3_count(r)
    rep.check("degree_bookkeeping", sum(x.count * x.residue_degree for x in decomp) == r - 1)
    rep.results["monodromy"] = out
    rep.tables["monodromy"] = (
        ["level", "residue_degree", "plus_residue_degree", "split_type", "count", "plus_count"],
        [[x.level, x.residue_degree, x.plus_residue_degree, x.split_type or "", x.count, x.plus_count]
         for x in decomp])


def section_traces(rep: Report, opts: Options):
    """Integrality and naive-count agreement of the local traces over the base field."""
    P = rep.params
    F = build_field(P.p, prime_power(P.q)[1], cap=opts.field_cap, cache_dir=opts.cache_dir)
    a = charsums.traces_by_alpha(F, P.r)
    bad = [al for al in range(2, F.q) if a[al] != F.q + 1 - charsums.naive_point_count(F, P.r, al)]
    rep.check("trace_naive_agreement", not bad, mismatches=len(bad))


def run(subcommand: str, params: InstanceParams, options: Options) -> Report:
    if subcommand not in SUBCOMMANDS:
        raise click.UsageError(f"unknown subcommand {subcommand}")
    rep = Report(params)
    if subcommand == "lfunction":
        section_lfunction(rep, options)
    elif subcommand == "rank":
        section_rank(rep, options)
    elif subcommand == "heights":
        section_heights(rep, options)
    elif subcommand == "module":
        section_module(rep, options)
    elif subcommand == "descent":
        section_descent(rep, options)
    elif subcommand == "bsd":
        section_bsd(rep, options)
    elif subcommand == "monodromy":
        section_monodromy(rep, options)
    else:
        closed = section_lfunction(rep, options)
        section_traces(rep, options)
        section_rank(rep, options, closed)
        for name, fn in (("heights", section_heights), ("module", section_module),
                         ("descent", section_descent), ("bsd", section_bsd),
                         ("monodromy", section_monodromy)):
            try:
                fn(rep, options)
            except (RegimeError, click.UsageError) as exc:
                rep.regime[name] = exc.message if isinstance(exc, click.UsageError) else str(exc)
    return rep


def emit_csv(rep: Report, subcommand: str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if subcommand == "report":
        w.writerow(["check", "pass"])
        for name in sorted(rep.checks):
            w.writerow([name, int(rep.checks[name]["pass"])])
    else:
        header, rows = rep.tables.get(subcommand, (["check", "pass"], []))
        w.writerow(header)
        for row in rows:
            w.writerow([str(x) for x in row])
    return buf.getvalue()


def _common(fn):
    opts = [
        click.option("--p", "p", type=int, default=None, help="characteristic"),
        click.option("--q", "q", type=int, default=None, help="size of the constant field"),
        click.option("--r", "r", type=int, default=None, help="exponent r of the curve"),
        click.option("--d", "d", type=int, default=None, help="degree d of u^d = t"),
        click.option("--ell", "ell", type=int, default=None, help="torsion prime for monodromy"),
        click.option("--max-n", "max_n", type=int, default=None, help="truncation of the L-series"),
        click.option("--json/--csv", "as_json", default=True, help="output format"),
        click.option("--cache-dir", "cache_dir", type=click.Path(), default=None,
                     envvar=CACHE_ENV, help=f"field-table cache (env {CACHE_ENV})"),
        click.option("--field-cap", "field_cap", type=int, default=DEFAULT_CAP,
                     help="largest field size allowed"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Invariants of the Jacobians of y^r = x^(r-1)(x+1)(x+t) over F_q(t^(1/d))."""


def _make_command(name):
    @main.command(name=name)
    @_common
    def command(p, q, r, d, ell, max_n, as_json, cache_dir, field_cap):
        for label, val in (("p", p), ("q", q), ("r", r), ("d", d), ("ell", ell)):
            if val is not None and val < 1:
                raise click.UsageError(f"--{label} must be positive")
        try:
            params = InstanceParams(p, q, r, d, ell)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        options = Options(max_n, cache_dir, field_cap)
        try:
            rep = run(name, params, options)
        except RegimeError as exc:
            raise click.UsageError(f"regime violation: {exc}")
        except FieldCapError as exc:
            raise click.UsageError(str(exc))
        out = rep.to_json() if as_json else emit_csv(rep, name)
        sys.stdout.write(out)
        sys.exit(0 if rep.ok else 1)

    command.__doc__ = f"Run the {name} computations."
    return command


for _name in SUBCOMMANDS:
    _make_command(_name)


if __name__ == "__main__":
    main()
