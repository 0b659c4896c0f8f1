"""Command-line scenario runner.

Each command builds its objects from a seed, runs the verifications and emits
a report.  Exit codes: 0 all verifications passed, 1 a mathematical verdict
was negative, 2 degenerate input or sampling exhausted.

    osculant togliatti [--model veronese-projection|segre-section] [--variety togliatti|veronese-full]
    osculant veronese --n 2 [--points P]
    osculant segre-section --N 5
    osculant polarity-rnc [--degrees 2 3 4 5 7] [--trials 100]
    osculant search-cubics
    osculant splitting [--system togliatti|random] [--lines 5]
    osculant segre-parity [--n-max 6]
    osculant scenario FILE.json

Common flags: --seed S, --samples K, --certify/--no-certify, --json PATH, --force.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__
from .linalg import ExactMatrix, in_span, normalize_primitive, rank_exact
from .osculation import (DegenerateSampling, UnderdeterminedCommonSpace, certify_common_point,
                         common_osculating_space, osculating_hyperplane)
from .polarity import (PARITY_MESSAGE, CubicSystem, admissible_hyperplane, build_m_tensor, coordinate_base_point,
                       has_base_point, laplace_line_test, random_cubic_system, rnc_bridge_determinants,
                       rnc_polarity_check, segre_pairing, segre_point, segre_section_common_point,
                       togliatti_system)
from .ratpoly import MPoly, monomials_of_degree, product, random_linear_form, render
from .syzygy import DegenerateRestriction, generic_splitting
from .varieties import (ParamVariety, ProjPoint, apply_functionals, form_to_veronese_coordinates,
                        hyperplane_section_param, linear_projection, projection_functionals,
                        random_independent_forms, restrict_to_hyperplane, segre, veronese, veronese_point)

SCHEMA = "osculant.report/1"
COMMANDS = ("togliatti", "veronese", "segre-section", "polarity-rnc", "search-cubics", "splitting", "segre-parity")
MAX_VERONESE_N = 2
MAX_SEGRE_N = 5
MAX_PARITY_N = 6

EXIT_PASS, EXIT_NEGATIVE, EXIT_DEGENERATE = 0, 1, 2


class ScenarioError(ValueError):
    """Invalid or degenerate scenario parameters (exit code 2)."""


@dataclass
class Report:
    command: str
    scenario: dict
    seed: int
    results: dict = field(default_factory=dict)
    exit_code: int = EXIT_PASS
    timing: float = 0.0

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": self.command,
            "scenario": jsonable(self.scenario),
            "seed": self.seed,
            "results": jsonable(self.results),
            "exit_code": self.exit_code,
            "timing": {"seconds": round(self.timing, 4)},
        }

    def to_json(self, include_timing: bool = True) -> str:
        d = self.to_dict()
        if not include_timing:
            d.pop("timing")
        return json.dumps(d, indent=2, sort_keys=True)


def jsonable(x):
    """Exact values become ints or 'p/q' strings; containers are converted recursively."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, MPoly):
        return render(x)
    if isinstance(x, ProjPoint):
        return x.as_list()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    raise TypeError(f"cannot serialize {type(x).__name__}")


# shared pipeline

def _common_point_pipeline(V: ParamVariety, k: int, samples: int, seed: int, certify: bool,
                           fallback: Optional[Sequence] = None) -> dict:
    """Sample the common osculating space and certify its points.

    Every basis vector of the sampled common space is certified; when the
    space is empty, ``fallback`` (if given) is certified instead so that the
    negative verdict is backed by an exact rank comparison.
    """
    space = common_osculating_space(V, k, samples, seed)
    out = {
        "variety": V.name,
        "k": k,
        "ambient_dim": V.ambient_dim,
        "generic_rank": space.generic_rank,
        "good_samples": space.good_samples,
        "singular_samples": space.singular_samples,
        "common_space_dim": space.dim,
        "common_space_basis": [list(normalize_primitive(v)) for v in space.basis],
    }
    candidates = [list(v) for v in space.basis] or ([list(fallback)] if fallback is not None else [])
    certs = [certify_common_point(V, k, c, certify, seed=seed) for c in candidates]
    out["certificates"] = [c.to_dict() for c in certs]
    found = len(space.basis) > 0
    out["common_point"] = ProjPoint(space.basis[0]).as_list() if len(space.basis) == 1 else None
    out["unique"] = len(space.basis) == 1
    if found and all(c.verdict == "common-point-verified" for c in certs):
        out["verdict"] = "common-point-verified"
    elif certs and any(c.verdict == "laplace-degenerate" for c in certs):
        out["verdict"] = "laplace-degenerate"
    else:
        out["verdict"] = "no-common-point"
    out["mode"] = "certified" if certs and all(c.mode == "certified" for c in certs) else "sampled"
    return out


def _exit_for(verdict: str) -> int:
    return EXIT_PASS if verdict == "common-point-verified" else EXIT_NEGATIVE


def _express(V: ParamVariety, f: MPoly) -> Optional[list]:
    """Functional h with sum h_i V_i = f, or None."""
    basis = monomials_of_degree(V.nvars, V.degree)
    vecs = [c.coefficient_vector(basis) for c in V.coordinates]
    return in_span(vecs, f.coefficient_vector(basis))


def triple_line_product() -> MPoly:
    """(x2 X1 - x1 X2)(x2 X0 - x0 X2)(x1 X0 - x0 X1) in the ring (X0, X1, X2, x0, x1, x2)."""
    X0, X1, X2, x0, x1, x2 = MPoly.gens(6)
    return (x2 * X1 - x1 * X2) * (x2 * X0 - x0 * X2) * (x1 * X0 - x0 * X1)


def togliatti_projection() -> ParamVariety:
    X = MPoly.gens(3)
    centers = [veronese_point(l, 3) for l in X]
    return linear_projection(veronese(2, 3), centers, name="togliatti-projection")


# commands

def run_togliatti(seed: int = 0, samples: int = 3, certify: bool = True, model: str = "veronese-projection",
                  variety: str = "togliatti", **_) -> Report:
    rep = Report("togliatti", {"model": model, "variety": variety, "samples": samples, "certify": certify}, seed)
    if model not in ("veronese-projection", "segre-section"):
        raise ScenarioError(f"unknown model {model!r}")
    if variety not in ("togliatti", "veronese-full"):
        raise ScenarioError(f"unknown variety {variety!r}")
    if model == "segre-section":
        if variety != "togliatti":
            raise ScenarioError("the segre-section model only realizes the togliatti surface")
        a = admissible_hyperplane(3, random.Random(seed))
        V = hyperplane_section_param(segre(3), a)
        c, cert = segre_section_common_point(3, a)
        res = _common_point_pipeline(V, 2, samples, seed, certify)
        res["hyperplane"] = a
        res["section_certificate"] = cert.to_dict()
        expected = ProjPoint(restrict_to_hyperplane(V.hyperplane_basis, list(c))).as_list()
        res["matches_m_tensor_point"] = res["common_point"] == expected
        ok = res["verdict"] == "common-point-verified" and res["matches_m_tensor_point"] and cert.verified
        rep.results = res
        rep.exit_code = EXIT_PASS if ok else EXIT_NEGATIVE
        return rep
    if variety == "veronese-full":
        V = veronese(2, 3)
        fallback = [1 if m == (1, 1, 1) else 0 for m in monomials_of_degree(3, 3)]
        res = _common_point_pipeline(V, 2, samples, seed, certify, fallback=fallback)
        rep.results = res
        rep.exit_code = _exit_for(res["verdict"])
        return rep
    V = togliatti_projection()
    res = _common_point_pipeline(V, 2, samples, seed, certify)
    res["coordinates"] = [render(c) for c in V.coordinates]
    dual = [1 if render(c) == "X0*X1*X2" else 0 for c in V.coordinates]
    res["dual_to_x0x1x2"] = res["common_point"] == dual
    # osculating hyperplane at (1,1,1) against the expanded product of three lines
    T = triple_line_product()
    at_one = T.substitute(MPoly.gens(3) + [MPoly.constant(3, 1)] * 3)
    computed = osculating_hyperplane(V, 2, (1, 1, 1))
    h = _express(V, at_one)
    res["hyperplane_at_111"] = computed.as_list()
    res["triple_line_product_at_111"] = render(at_one)
    res["hyperplane_matches_product"] = h is not None and ProjPoint(h) == computed
    xyz_coeff = T.split(3).get((1, 1, 1), MPoly.zero(3))
    res["x0x1x2_coefficient"] = render(xyz_coeff)
    ok = (res["verdict"] == "common-point-verified" and res["dual_to_x0x1x2"]
          and res["hyperplane_matches_product"] and xyz_coeff.is_zero())
    rep.results = res
    rep.exit_code = EXIT_PASS if ok else EXIT_NEGATIVE
    return rep


def run_veronese(n: int = 1, seed: int = 0, samples: int = 3, certify: bool = True, points: Optional[int] = None,
                 force: bool = False, **_) -> Report:
    if n < 1:
        raise ScenarioError("n must be >= 1")
    if n > MAX_VERONESE_N and not force:
        raise ScenarioError(f"n > {MAX_VERONESE_N} is beyond desk scale; pass --force (sampled certificates only)")
    d = 2 * n + 1
    k = 2 * n
    npts = d if points is None else points
    if npts < 0:
        raise ScenarioError("points must be non-negative")
    certify = certify and n <= MAX_VERONESE_N
    rep = Report("veronese", {"n": n, "points": npts, "samples": samples, "certify": certify, "force": force}, seed)
    rng = random.Random(seed)
    try:
        forms = random_independent_forms(rng, npts, d) if npts else []
    except RuntimeError as exc:
        raise ScenarioError(str(exc)) from exc
    centers = [veronese_point(l, d) for l in forms]
    V = linear_projection(veronese(2, d), centers, name=f"proj[veronese(2,{d});{npts}]")
    candidate = None
    if npts == d:
        funcs = projection_functionals([list(c) for c in centers], len(veronese(2, d).coordinates))
        candidate = apply_functionals(funcs, form_to_veronese_coordinates(product(forms, 3)))
    res = _common_point_pipeline(V, k, samples, seed + 1, certify, fallback=candidate)
    res["forms"] = [render(l) for l in forms]
    if candidate is not None:
        cand_cert = certify_common_point(V, k, candidate, certify, seed=seed)
        res["product_candidate"] = ProjPoint(candidate).as_list()
        res["product_certificate"] = cand_cert.to_dict()
        dets = rnc_bridge_determinants(forms)
        res["bridge_determinants"] = [render(D) for D in dets]
        res["bridge_identically_zero"] = all(D.is_zero() for D in dets)
        ok = (cand_cert.verdict == "common-point-verified" and res["bridge_identically_zero"]
              and res["verdict"] == "common-point-verified")
        res["product_verdict"] = cand_cert.verdict
    else:
        ok = res["verdict"] == "common-point-verified"
    rep.results = res
    rep.exit_code = EXIT_PASS if ok else EXIT_NEGATIVE
    return rep


def run_segre_section(N: int = 3, seed: int = 0, samples: int = 3, certify: bool = True, force: bool = False,
                      **_) -> Report:
    if N % 2 == 0:
        raise ScenarioError(f"N={N} rejected: {PARITY_MESSAGE}")
    if N < 3:
        raise ScenarioError("N must be odd and >= 3")
    if N > MAX_SEGRE_N and not force:
        raise ScenarioError(f"N > {MAX_SEGRE_N} is beyond desk scale; pass --force")
    # symbolic rank certification of the osculating spaces is feasible only at N = 3
    osc_certify = certify and N <= 3
    rep = Report("segre-section", {"N": N, "samples": samples, "certify": certify, "force": force}, seed)
    a = admissible_hyperplane(N, random.Random(seed))
    c, cert = segre_section_common_point(N, a)
    res = {"hyperplane": a, "m_tensor_point": c.as_list(), "certificate": cert.to_dict()}
    V = hyperplane_section_param(segre(N), a)
    expected = ProjPoint(restrict_to_hyperplane(V.hyperplane_basis, list(c))).as_list()
    osc = _common_point_pipeline(V, N - 1, samples, seed, osc_certify)
    osc["matches_m_tensor_point"] = osc["common_point"] == expected
    res["osculation"] = osc
    ok = cert.verified and osc["verdict"] == "common-point-verified" and osc["matches_m_tensor_point"]
    rep.results = res
    rep.exit_code = EXIT_PASS if ok else EXIT_NEGATIVE
    return rep


def run_polarity_rnc(seed: int = 0, degrees: Sequence[int] = (2, 3, 4, 5, 7), trials: int = 100, **_) -> Report:
    if trials < 1:
        raise ScenarioError("trials must be >= 1")
    if any(d < 1 for d in degrees):
        raise ScenarioError("degrees must be positive")
    rep = Report("polarity-rnc", {"degrees": list(degrees), "trials": trials}, seed)
    rng = random.Random(seed)
    table, ok = {}, True
    for d in degrees:
        witnesses = reproduced = skipped = tested = 0
        example = None
        while tested < trials:
            forms = [random_linear_form(rng, 2) for _ in range(d)]
            try:
                w = rnc_polarity_check(d, forms)
            except ValueError:
                skipped += 1
                if skipped > 10 * trials:
                    raise ScenarioError("too many proportional draws")
                continue
            tested += 1
            if w is None:
                continue
            witnesses += 1
            expansion = sum((l ** d * c for l, c in zip(forms, w)), MPoly.zero(2))
            if expansion == product(forms, 2):
                reproduced += 1
            if example is None:
                example = {"forms": [render(l) for l in forms], "coefficients": w}
        expected_all = d % 2 == 1
        passed = (witnesses == reproduced == tested) if expected_all else witnesses == 0
        ok = ok and passed
        table[str(d)] = {"tested": tested, "skipped_proportional": skipped, "witnesses": witnesses,
                         "reproduced": reproduced, "expected": "all" if expected_all else "none",
                         "passed": passed, "example": example}
    rep.results = {"degrees": table}
    rep.exit_code = EXIT_PASS if ok else EXIT_NEGATIVE
    return rep


def run_search_cubics(**_) -> Report:
    rep = Report("search-cubics", {}, 0)
    monos = monomials_of_degree(3, 3)
    cubes = {(3, 0, 0), (0, 3, 0), (0, 0, 3)}
    excluded, free, satisfying = [], [], []
    for subset in combinations(monos, 4):
        forms = [MPoly.monomial(m) for m in subset]
        names = [render(f) for f in forms]
        if has_base_point(forms):
            excluded.append({"system": names, "witness": coordinate_base_point(forms)})
            continue
        test = laplace_line_test(CubicSystem(tuple(forms)))
        entry = {"system": names, "verdict": test.verdict, "witness_line": test.witness}
        free.append(entry)
        if test.holds:
            satisfying.append(names)
    cube_check = all(cubes <= {tuple(m) for m in map(_parse_monomial, e["system"])} for e in free)
    rep.results = {
        "subsets": len(excluded) + len(free),
        "base_point_free": len(free),
        "base_point_free_contain_all_cubes": cube_check,
        "satisfying": satisfying,
        "base_point_free_systems": free,
        "excluded": excluded,
    }
    target = {"X0^3", "X1^3", "X2^3", "X0*X1*X2"}
    ok = len(free) == 7 and [set(s) for s in satisfying] == [target] and cube_check
    rep.exit_code = EXIT_PASS if ok else EXIT_NEGATIVE
    return rep


def _parse_monomial(text: str) -> tuple:
    e = [0, 0, 0]
    for factor in text.split("*"):
        var, _, power = factor.partition("^")
        e[int(var[1:])] += int(power or 1)
    return tuple(e)


def _build_system(system: str, seed: int, cubics: Optional[Sequence[Sequence[int]]]) -> CubicSystem:
    basis = monomials_of_degree(3, 3)
    if cubics is not None:
        if len(cubics) != 4 or any(len(c) != len(basis) for c in cubics):
            raise ScenarioError(f"cubics must be four lists of {len(basis)} coefficients (graded-lex order)")
        return CubicSystem(tuple(MPoly.from_coefficients(3, basis, c) for c in cubics))
    rng = random.Random(seed)
    if system == "togliatti":
        return togliatti_system(*MPoly.gens(3))
    if system == "random-togliatti":
        while True:
            ls = [random_linear_form(rng, 3) for _ in range(3)]
            if rank_exact(ExactMatrix([[l.coefficient(e) for e in monomials_of_degree(3, 1)] for l in ls])) == 3:
                return togliatti_system(*ls)
    if system == "random":
        return random_cubic_system(rng)
    raise ScenarioError(f"unknown system {system!r}")


def run_splitting(seed: int = 0, system: str = "togliatti", lines: int = 5,
                  cubics: Optional[Sequence[Sequence[int]]] = None, **_) -> Report:
    if lines < 1:
        raise ScenarioError("lines must be >= 1")
    rep = Report("splitting", {"system": system if cubics is None else "custom", "lines": lines,
                               "cubics": cubics}, seed)
    try:
        S = _build_system(system, seed, cubics)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    if has_base_point(list(S.generators)):
        raise ScenarioError("system has a base point; splitting is only classified for base-point-free systems")
    g = generic_splitting(S, lines, seed)
    res = g.to_dict()
    res["generators"] = [render(f) for f in S.generators]
    res["degree_sum"] = sum(g.degrees)
    rep.results = res
    rep.exit_code = EXIT_PASS
    return rep


def run_segre_parity(n_max: int = 6, **_) -> Report:
    if not 1 <= n_max <= MAX_PARITY_N:
        raise ScenarioError(f"n-max must lie in 1..{MAX_PARITY_N}")
    rep = Report("segre-parity", {"n_max": n_max}, 0)
    rows, ok = [], True
    for n in range(1, n_max + 1):
        M = build_m_tensor(n).matrix
        size = 2 ** n
        sign = (-1) ** n
        transpose_ok = M.transpose() == M.scale(sign)
        involution_ok = M @ M == ExactMatrix.identity(size).scale(sign)
        full_rank = rank_exact(M) == size
        x = MPoly.gens(size)
        pairing = segre_pairing(n, x)
        t = MPoly.gens(2 * n)
        on_segre = segre_pairing(n, segre_point([(t[2 * i], t[2 * i + 1]) for i in range(n)]))
        entry = {"n": n, "symmetry": "symmetric" if sign == 1 else "antisymmetric",
                 "transpose_identity": transpose_ok, "involution_identity": involution_ok, "rank": rank_exact(M),
                 "pairing_zero": pairing.is_zero(), "vanishes_on_segre": on_segre.is_zero()}
        if n % 2:
            passed = transpose_ok and involution_ok and pairing.is_zero()
        else:
            entry["pairing"] = render(pairing) if n <= 2 else f"{len(pairing)} terms"
            passed = transpose_ok and involution_ok and full_rank and not pairing.is_zero() and on_segre.is_zero()
        entry["passed"] = passed
        ok = ok and passed
        rows.append(entry)
    rep.results = {"rows": rows}
    rep.exit_code = EXIT_PASS if ok else EXIT_NEGATIVE
    return rep


RUNNERS: dict[str, Callable[..., Report]] = {
    "togliatti": run_togliatti,
    "veronese": run_veronese,
    "segre-section": run_segre_section,
    "polarity-rnc": run_polarity_rnc,
    "search-cubics": run_search_cubics,
    "splitting": run_splitting,
    "segre-parity": run_segre_parity,
}


def run_scenario(command: str, params: dict) -> Report:
    """Run one command; degenerate inputs come back as exit-code-2 reports."""
    if command not in RUNNERS:
        raise ScenarioError(f"unknown command {command!r}")
    start = time.perf_counter()
    try:
        rep = RUNNERS[command](**params)
    except (ScenarioError, DegenerateSampling, DegenerateRestriction, UnderdeterminedCommonSpace) as exc:
        rep = Report(command, {k: v for k, v in params.items() if k != "seed"}, params.get("seed", 0),
                     {"error": str(exc)}, EXIT_DEGENERATE)
    rep.timing = time.perf_counter() - start
    return rep


# argument parsing

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--samples", type=int, default=3, help="minimum sampled parameter points (default 3)")
    p.add_argument("--certify", action=argparse.BooleanOptionalAction, default=True,
                   help="symbolic certification of ranks (default on)")
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    p.add_argument("--force", action="store_true", help="allow parameters beyond desk scale")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="osculant", description="Exact verification of common points of "
                                     "osculating hyperplanes and related polarity identities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("togliatti", help="common point of the 2-osculating hyperplanes of the Togliatti surface")
    p.add_argument("--model", choices=("veronese-projection", "segre-section"), default="veronese-projection")
    p.add_argument("--variety", choices=("togliatti", "veronese-full"), default="togliatti")
    _add_common(p)

    p = sub.add_parser("veronese", help="projection of veronese(2, 2n+1) from 2n+1 power points")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--points", type=int, default=None, help="number of projection points (default 2n+1)")
    _add_common(p)

    p = sub.add_parser("segre-section", help="general hyperplane section of segre(N), N odd")
    p.add_argument("--N", type=int, default=3)
    _add_common(p)

    p = sub.add_parser("polarity-rnc", help="products of binary forms versus spans of their powers")
    p.add_argument("--degrees", type=int, nargs="+", default=[2, 3, 4, 5, 7])
    p.add_argument("--trials", type=int, default=100)
    _add_common(p)

    p = sub.add_parser("search-cubics", help="exhaustive line-divisibility test on monomial cubic systems")
    _add_common(p)

    p = sub.add_parser("splitting", help="splitting type of the syzygy bundle on random lines")
    p.add_argument("--system", choices=("togliatti", "random-togliatti", "random"), default="togliatti")
    p.add_argument("--lines", type=int, default=5, help="number of random lines")
    p.add_argument("--cubics", type=json.loads, default=None,
                   help="JSON list of four coefficient lists in graded-lex order (overrides --system)")
    _add_common(p)

    p = sub.add_parser("segre-parity", help="symmetry of the Kronecker powers of the symplectic form")
    p.add_argument("--n-max", dest="n_max", type=int, default=6)
    _add_common(p)

    p = sub.add_parser("scenario", help="run a scenario file {\"command\": ..., \"parameters\": {...}}")
    p.add_argument("path")
    p.add_argument("--json", metavar="PATH")
    return parser


_GLOBAL = {"command", "json", "path"}


def load_scenario(path: str) -> tuple[str, dict]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or "command" not in data:
        raise ScenarioError("scenario file must be an object with a 'command' field")
    params = data.get("parameters", {})
    if not isinstance(params, dict):
        raise ScenarioError("'parameters' must be an object")
    return data["command"], params


def summarize(rep: Report) -> str:
    res = rep.results
    lines = [f"osculant {__version__} :: {rep.command} (seed {rep.seed})"]
    for key in ("error", "verdict", "mode", "common_space_dim", "common_point", "unique", "product_verdict",
                "bridge_identically_zero", "dual_to_x0x1x2", "hyperplane_matches_product", "base_point_free",
                "satisfying", "degrees", "agree", "confirmed"):
        if key in res:
            lines.append(f"  {key}: {jsonable(res[key])}")
    if "certificate" in res:
        lines.append(f"  certificate verified: {res['certificate']['verified']}")
    if "osculation" in res:
        lines.append(f"  osculation verdict: {res['osculation']['verdict']} "
                     f"(matches m-tensor point: {res['osculation']['matches_m_tensor_point']})")
    if rep.command == "polarity-rnc":
        for d, row in res["degrees"].items():
            lines.append(f"  d={d}: {row['witnesses']}/{row['tested']} witnesses, expected {row['expected']}")
    if rep.command == "segre-parity":
        for row in res["rows"]:
            lines.append(f"  n={row['n']}: {row['symmetry']}, passed={row['passed']}")
    lines.append(f"  exit code: {rep.exit_code}  ({rep.timing:.2f} s)")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "scenario":
        try:
            command, params = load_scenario(args.path)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DEGENERATE
    else:
        command = args.command
        params = {k: v for k, v in vars(args).items() if k not in _GLOBAL}
    try:
        rep = run_scenario(command, params)
    except (ScenarioError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    print(summarize(rep))
    if args.json:
        text = rep.to_json()
        if args.json == "-":
            print(text)
        else:
            Path(args.json).write_text(text + "\n")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
