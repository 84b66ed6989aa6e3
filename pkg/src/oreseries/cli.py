"""Command-line front end: ``oreseries <command> [options]``.

Exit codes: 0 success, 1 operation error, 2 parse/config error,
3 falsification candidate (audit or commute).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import OreSeriesError, ParseError
from .factor import (
    CommutationWitness,
    FalsificationCandidate,
    ReducibleInstead,
    canonicalize_typeC,
    commute_CB,
    extract_right_factor,
    factor_best_effort,
)
from .homtools import ExtBounds, ExtWitness, SimilarityWitness, ext_vanishing_search, search_similarity, verify_similarity
from .ore import S, T, OreRing, SkewPoly, gcrd, lclm, left_divmod, lift_to_S, right_divmod
from .sampling import random_type_b, random_type_c
from .series import FiniteOrder, finite_order_check
from .taxonomy import condition_co, eisenstein_irreducible, strip_and_classify

EXIT_OK, EXIT_OP, EXIT_CONFIG, EXIT_FALSIFIED = 0, 1, 2, 3


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("context")
    g.add_argument("--field", default=argparse.SUPPRESS, help="q (rationals) or fp:<p>; default q")
    g.add_argument("--q", default=argparse.SUPPRESS, help='series with nonzero constant term; default "2"')
    g.add_argument("--prec", type=int, default=argparse.SUPPRESS, help="X-adic working precision N (default 16)")
    g.add_argument("--vmax", type=int, default=argparse.SUPPRESS, help="lowest Laurent valuation (default 32)")
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized commands")
    return p


DEFAULTS = {"field": "q", "q": "2", "prec": 16, "vmax": 32, "json": False, "seed": 0}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="oreseries", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add("mul", "product of one or more elements, left to right")
    p.add_argument("exprs", nargs="+")
    p = add("divmod", "division with remainder")
    p.add_argument("z")
    p.add_argument("d")
    p.add_argument("--side", choices=("right", "left"), default="right",
                   help="right: z = q*d + r; left: z = d*q + r")
    p.add_argument("--in-T", action="store_true", help="divide in T (divisor lead need not be a unit)")
    for name, text in (("classify", "normal form and shape"), ("eisenstein", "Eisenstein certificate"),
                       ("co", "condition S = XS + zS"), ("extract", "converse-Eisenstein right factor"),
                       ("canonc", "canonical form of a type C element"), ("factor", "best-effort factorization"),
                       ("lift", "least X^n with X^n*t in S")):
        add(name, text).add_argument("z")
    p = add("order", "search for a finite order of alpha")
    p.add_argument("--n-max", type=int, default=64)
    p = add("commute", "rewrite c*b as b'*c'")
    p.add_argument("--c", required=True)
    p.add_argument("--b", required=True)
    for name in ("gcrd", "lclm"):
        p = add(name, f"{name} in T")
        p.add_argument("a")
        p.add_argument("b")
    p = add("similar", "search for (or check) a similarity witness u")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--bound", type=int, default=None, help="deg u < bound (default deg + 2)")
    p.add_argument("--u", default=None, help="check this witness instead of searching")
    p = add("ext", "search u, v with u*a + b*v = 1")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--slack", type=int, default=0)
    p.add_argument("--max-slack", type=int, default=8)
    p.add_argument("--val-window", type=int, default=2)
    p = add("audit", "commute c*b = b'*c' on random pairs")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--max-deg", type=int, default=3)
    p = add("verify", "re-check a JSON witness emitted with --json")
    p.add_argument("file", help="path, or - for stdin")
    return parser


def _options(ns) -> dict:
    opts = dict(DEFAULTS)
    for k in DEFAULTS:
        if hasattr(ns, k):
            opts[k] = getattr(ns, k)
    return opts


def make_ring(opts: dict) -> OreRing:
    if opts["prec"] < 4:
        raise ConfigError("--prec must be at least 4")
    if opts["vmax"] < 0:
        raise ConfigError("--vmax must be non-negative")
    try:
        return OreRing(opts["field"], q=str(opts["q"]), prec=opts["prec"], vmax=opts["vmax"])
    except ParseError as exc:
        raise ConfigError(f"bad --q: {exc}") from None
    except (ValueError, ArithmeticError) as exc:
        raise ConfigError(str(exc)) from None


def _context(opts: dict) -> dict:
    return {k: opts[k] for k in ("field", "q", "prec", "vmax")}


def _parse(ring: OreRing, src: str, name: str = "expression") -> SkewPoly:
    try:
        return ring.parse(src)
    except ParseError as exc:
        raise ParseError(f"{name}: {exc}") from None


# -- commands -------------------------------------------------------------------------------
# each returns (json-able result, human text lines, exit code)


def _elem(z: SkewPoly) -> dict:
    return {"text": z.to_text(), **z.to_json()}


def cmd_mul(ring, ns, opts):
    out = None
    for i, src in enumerate(ns.exprs):
        z = _parse(ring, src, f"factor {i + 1}")
        out = z if out is None else out * z
    return {"kind": "product", "product": _elem(out)}, [str(out)], EXIT_OK


def cmd_divmod(ring, ns, opts):
    z, d = _parse(ring, ns.z, "z"), _parse(ring, ns.d, "d")
    if ns.in_T:
        z, d = z.to_T(), d.to_T()
    res = (right_divmod if ns.side == "right" else left_divmod)(z, d)
    form = "q*d + r" if ns.side == "right" else "d*q + r"
    result = {"kind": "division", "side": ns.side, "z": _elem(z), "d": _elem(d),
              "quotient": _elem(res.quotient), "remainder": _elem(res.remainder), "prec": res.prec}
    text = [f"z = {form}", f"q = {res.quotient}", f"r = {res.remainder}"]
    return result, text, EXIT_OK


def cmd_classify(ring, ns, opts):
    z = _parse(ring, ns.z)
    cert = strip_and_classify(z)
    F = ring.field
    text = [f"shape: {cert.shape.value}", f"X^{cert.x_exp} * ({F.to_str(cert.unit)}) * core * theta^{cert.theta_exp}",
            f"core: {cert.core}"]
    if cert.f is not None:
        text.append(f"f = core mod X: {[F.to_str(c) for c in cert.f]} (n = {cert.n})")
    return {"kind": "classification", "input": _elem(z), **cert.to_json()}, text, EXIT_OK


def cmd_eisenstein(ring, ns, opts):
    res = eisenstein_irreducible(_parse(ring, ns.z))
    data = res.to_json()
    text = [f"irreducible (Eisenstein certificate, degree {res.degree})" if "reason" not in data
            else f"not applicable: {data['reason']}"]
    return {"kind": "eisenstein", **data}, text, EXIT_OK


def cmd_co(ring, ns, opts):
    ok = condition_co(_parse(ring, ns.z))
    return {"kind": "condition_co", "holds": ok}, ["holds" if ok else "fails"], EXIT_OK


def cmd_order(ring, ns, opts):
    res = finite_order_check(ring.alpha, ns.n_max)
    if isinstance(res, FiniteOrder):
        return {"kind": "order", "finite": True, "n": res.n}, [f"finite order {res.n}"], EXIT_OK
    return ({"kind": "order", "finite": False, "n_max": res.n_max},
            [f"no order up to {res.n_max} (not a proof of infinite order)"], EXIT_OK)


def cmd_extract(ring, ns, opts):
    wit = extract_right_factor(_parse(ring, ns.z))
    text = [f"divisor  = {wit.divisor}", f"quotient = {wit.quotient}", f"n = {wit.n}, passes = {wit.passes}"]
    return wit.to_json(), text, EXIT_OK


def cmd_canonc(ring, ns, opts):
    res = canonicalize_typeC(_parse(ring, ns.z))
    if isinstance(res, ReducibleInstead):
        w = res.witness
        return res.to_json(), ["reducible: leading coefficient is not a unit",
                               f"divisor  = {w.divisor}", f"quotient = {w.quotient}"], EXIT_OK
    return res.to_json(), [f"c_hat = {res.c_hat}", f"u = {res.u}"], EXIT_OK


def cmd_commute(ring, ns, opts):
    c, b = _parse(ring, ns.c, "--c"), _parse(ring, ns.b, "--b")
    res = commute_CB(c, b)
    if isinstance(res, FalsificationCandidate):
        return res.to_json(), [f"FALSIFICATION CANDIDATE: {res.reason}"], EXIT_FALSIFIED
    text = [f"b' = {res.b_prime}", f"c' = {res.c_prime}",
            "checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in res.checks().items())]
    return res.to_json(), text, EXIT_OK


def cmd_factor(ring, ns, opts):
    rep = factor_best_effort(_parse(ring, ns.z))
    text = [f"{len(rep.factors)} factor(s), product verified mod X^{rep.prec}: {rep.verify()}"]
    for f in rep.factors:
        certs = ", ".join(c.get("certificate") for c in f.certificates) or "-"
        text.append(f"  [{f.kind}, shape {f.shape}, certificates: {certs}] {f.element.to_text()}")
    return rep.to_json(), text, EXIT_OK


def cmd_lift(ring, ns, opts):
    z, n = lift_to_S(_parse(ring, ns.z))
    return {"kind": "lift", "n": n, "z": _elem(z)}, [f"n = {n}", f"X^n * t = {z}"], EXIT_OK


def cmd_gcrd(ring, ns, opts):
    a, b = _parse(ring, ns.a, "a"), _parse(ring, ns.b, "b")
    g, u, v = gcrd(a, b)
    result = {"kind": "gcrd", "a": _elem(a), "b": _elem(b), "g": _elem(g), "u": _elem(u), "v": _elem(v)}
    return result, [f"g = {g}", f"u = {u}", f"v = {v}"], EXIT_OK


def cmd_lclm(ring, ns, opts):
    a, b = _parse(ring, ns.a, "a"), _parse(ring, ns.b, "b")
    m = lclm(a, b)
    return {"kind": "lclm", "a": _elem(a), "b": _elem(b), "m": _elem(m)}, [f"lclm = {m}"], EXIT_OK


def cmd_similar(ring, ns, opts):
    a, b = _parse(ring, ns.a, "a"), _parse(ring, ns.b, "b")
    if ns.u is not None:
        u = _parse(ring, ns.u, "--u")
        verdict = verify_similarity(a, b, u)
        text = ["verified" if verdict else f"refuted: {verdict.clause}"]
        return {"kind": "similarity_check", **verdict.to_json()}, text, EXIT_OK
    bound = ns.bound if ns.bound is not None else (a.degree or 0) + 2
    res = search_similarity(a, b, bound, seed=opts["seed"])
    if isinstance(res, SimilarityWitness):
        return res.to_json(), [f"similar via u = {res.u}", f"(verified mod X^{res.prec})"], EXIT_OK
    return res.to_json(), [f"no witness with deg u < {bound} ({res.reason}); not a refutation"], EXIT_OK


def cmd_ext(ring, ns, opts):
    a, b = _parse(ring, ns.a, "a"), _parse(ring, ns.b, "b")
    res = ext_vanishing_search(a, b, ExtBounds(ns.slack, ns.val_window), ns.max_slack)
    if isinstance(res, ExtWitness):
        return res.to_json(), [f"u = {res.u}", f"v = {res.v}", f"u*a + b*v = 1 mod X^{res.prec}"], EXIT_OK
    b = res.bound
    return res.to_json(), [f"no witness with slack <= {b.slack}, valuation window {b.val_window}; "
                           "not a proof of non-vanishing"], EXIT_OK


def run_audit(ring, samples: int, max_deg: int, seed: int) -> dict:
    rng = random.Random(seed)
    passed, failures = 0, []
    for i in range(samples):
        c = random_type_c(ring, rng, rng.randint(1, max_deg))
        b = random_type_b(ring, rng, rng.randint(1, max_deg))
        res = commute_CB(c, b)
        if isinstance(res, CommutationWitness):
            passed += 1
        else:
            failures.append({"index": i, **res.to_json()})
    return {"kind": "audit", "samples": samples, "passed": passed, "failed": len(failures), "failures": failures}


def cmd_audit(ring, ns, opts):
    rep = run_audit(ring, ns.samples, ns.max_deg, opts["seed"])
    text = [f"audit: {rep['passed']}/{rep['samples']} pairs produced verified witnesses, {rep['failed']} failures"]
    for f in rep["failures"]:
        text.append(f"  sample {f['index']}: {f['reason']}")
    return rep, text, EXIT_FALSIFIED if rep["failed"] else EXIT_OK


# -- verification of emitted JSON -----------------------------------------------------------


def _load(ring, data) -> SkewPoly:
    return SkewPoly.from_json(ring, data)


def verify_payload(ring: OreRing, result: dict) -> tuple[bool, str]:
    kind = result.get("kind")
    if kind == "right_factor":
        z, d, q = (_load(ring, result[k]) for k in ("input", "divisor", "quotient"))
        prec = result["prec"]
        ok = (q * d - z).truncate(prec).is_zero() and d.is_monic() and d.degree == result["n"]
        return ok, f"quotient*divisor == input mod X^{prec}"
    if kind == "commutation":
        c, b, bp, cp = (_load(ring, result[k]) for k in ("c", "b", "b_prime", "c_prime"))
        checks = CommutationWitness(c, b, bp, cp, result["prec"]).checks()
        bad = [k for k, v in checks.items() if not v]
        return not bad, "all checks pass" if not bad else "failed: " + ", ".join(bad)
    if kind == "similarity":
        a, b, u = (_load(ring, result[k]) for k in ("a", "b", "u"))
        verdict = verify_similarity(a, b, u, result["prec"])
        return bool(verdict), "verified" if verdict else verdict.clause
    if kind == "ext":
        a, b, u, v = (_load(ring, result[k]) for k in ("a", "b", "u", "v"))
        prec = result["prec"]
        ok = (u * a + b * v - ring.one(T)).truncate(prec).is_zero()
        return ok, f"u*a + b*v == 1 mod X^{prec}"
    if kind == "factorization":
        z = _load(ring, result["input"])
        prod = ring.one(S)
        for f in result["factors"]:
            prod = prod * _load(ring, f["element"])
        prec = result["prec"]
        return (prod - z).truncate(prec).is_zero(), f"product of factors == input mod X^{prec}"
    if kind == "division":
        z, d, q, r = (_load(ring, result[k]) for k in ("z", "d", "quotient", "remainder"))
        back = q * d + r if result["side"] == "right" else d * q + r
        ok = back.equals(z) and (r.is_zero() or r.degree < d.degree)
        return ok, "division identity"
    if kind == "gcrd":
        a, b, g, u, v = (_load(ring, result[k]) for k in ("a", "b", "g", "u", "v"))
        return (u * a + v * b).equals(g) and g.is_monic(), "u*a + v*b == g"
    if kind == "classification":
        z, core = _load(ring, result["input"]), _load(ring, result["core"])
        unit = ring.field.parse(result["unit"])
        back = core.map_coeffs(lambda i, c: c.scale(unit)).shift_x(result["x_exp"]) * ring.theta ** result["theta_exp"]
        same_shape = strip_and_classify(z).shape.value == result["shape"]
        return back.equals(z) and same_shape, "X^a * unit * core * theta^b == input, shape recomputed"
    raise ValueError(f"cannot verify payload of kind {kind!r}")


def cmd_verify(ring, ns, opts):
    raw = sys.stdin.read() if ns.file == "-" else open(ns.file, encoding="utf-8").read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"not JSON: {exc}") from None
    if "context" in doc:
        ring = make_ring({**opts, **doc["context"]})
    result = doc.get("result", doc)
    ok, detail = verify_payload(ring, result)
    return ({"kind": "verification", "of": result.get("kind"), "verified": ok, "detail": detail},
            [("verified: " if ok else "NOT verified: ") + detail], EXIT_OK if ok else EXIT_OP)


COMMANDS = {
    "mul": cmd_mul, "divmod": cmd_divmod, "classify": cmd_classify, "eisenstein": cmd_eisenstein,
    "co": cmd_co, "order": cmd_order, "extract": cmd_extract, "canonc": cmd_canonc,
    "commute": cmd_commute, "factor": cmd_factor, "lift": cmd_lift, "gcrd": cmd_gcrd,
    "lclm": cmd_lclm, "similar": cmd_similar, "ext": cmd_ext, "audit": cmd_audit, "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    opts = _options(ns)
    try:
        ring = make_ring(opts)
        result, text, code = COMMANDS[ns.command](ring, ns, opts)
    except (ConfigError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OreSeriesError, ArithmeticError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_OP
    if opts["json"]:
        print(json.dumps({"command": ns.command, "context": _context(opts), "result": result}, indent=2))
    else:
        print("\n".join(text))
    return code


if __name__ == "__main__":
    sys.exit(main())
