"""Command-line front end: ``analyze`` a JSON config, or run a built-in demo.

Exit codes: 0 success, 1 input/config error, 2 certification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import frames, oracle, vnalg
from .errors import CertificationError, ConfigError, OrbitFrameError, VerificationFailed
from .groups import build_cyclic, build_dihedral, build_direct_product, from_cayley_table
from .helson import (build_helson_map, decompose_invariant, fourier_helson_map, orbit_span_basis, verify_helson_axioms,
                     zak_helson_map)
from .jsonio import dumps, parse_array
from .models import d3_model
from .representations import (action_representation, bracket, left_regular, make_action, make_representation,
                              random_vector, right_regular, verify_bracket_properties)

AGREEMENT_TOL = 1e-8
DEMO_TOL = 1e-9


# --- config loading -------------------------------------------------------

def _need(d: dict, key: str, path: str):
    if not isinstance(d, dict) or key not in d:
        raise ConfigError(f"missing key {key!r}", path)
    return d[key]


def load_group(cfg, path: str = "group"):
    kind = _need(cfg, "kind", path)
    try:
        if kind == "cyclic":
            return build_cyclic(int(_need(cfg, "n", path)))
        if kind == "dihedral":
            return build_dihedral(int(_need(cfg, "m", path)))
        if kind == "product":
            fs = _need(cfg, "factors", path)
            if not isinstance(fs, list) or len(fs) != 2:
                raise ConfigError("product needs exactly two factors", f"{path}.factors")
            return build_direct_product(load_group(fs[0], f"{path}.factors[0]"), load_group(fs[1], f"{path}.factors[1]"))
        if kind == "table":
            return from_cayley_table(_need(cfg, "cayley", path), cfg.get("labels"))
    except ConfigError:
        raise
    except (OrbitFrameError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc), path) from exc
    raise ConfigError(f"unknown group kind {kind!r}", f"{path}.kind")


def load_representation(cfg, group, tol: float, path: str = "representation"):
    """Returns ``(rep, named_vectors, action)``; names exist for the D3 model, the action for action kinds."""
    kind = _need(cfg, "kind", path)
    try:
        if kind == "d3_model":
            m = d3_model()
            if group is not None and group != m.group:
                raise ConfigError("d3_model requires the dihedral group of order 6", path)
            return m.rep, {"fixed": m.fixed, "boundary": m.boundary, "interior": m.interior}, m.action
        if group is None:
            raise ConfigError("missing key 'group'", "group")
        if kind == "left_regular":
            return left_regular(group), {}, None
        if kind == "right_regular":
            return right_regular(group), {}, None
        if kind == "matrices":
            return make_representation(group, parse_array(_need(cfg, "matrices", path), 3), tol), {}, None
        if kind == "action":
            action = make_action(group, _need(cfg, "perms", path), cfg.get("jacobian"), cfg.get("measure"), tol)
            return action_representation(action, tol), {}, action
    except ConfigError:
        raise
    except (OrbitFrameError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc), path) from exc
    raise ConfigError(f"unknown representation kind {kind!r}", f"{path}.kind")


def load_vector(cfg, dim: int, named: dict, path: str) -> np.ndarray:
    if isinstance(cfg, str):
        if cfg not in named:
            raise ConfigError(f"unknown named vector {cfg!r}", path)
        return named[cfg]
    if isinstance(cfg, dict):
        k = int(_need(cfg, "unit", path))
        if not 0 <= k < dim:
            raise ConfigError(f"unit index {k} out of range for dimension {dim}", path)
        v = np.zeros(dim, dtype=complex)
        v[k] = 1.0
        return v
    try:
        v = parse_array(cfg, 1)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc), path) from exc
    if v.shape != (dim,):
        raise ConfigError(f"vector has length {v.shape[0]}, representation dimension is {dim}", path)
    return v


ANALYSES = ("bracket", "bracket_properties", "orthonormality", "riesz_bounds", "frame_bounds", "gram_oracle",
            "parseval_generator", "parseval_family", "dual_generator", "principal_multiplier", "membership",
            "helson_axioms")


# --- analyses -------------------------------------------------------------

def _bounds_entry(rep, gens, which: str, cutoff: float, tol: float, seed: int) -> dict:
    sb = (frames.riesz_bounds if which == "riesz" else frames.frame_bounds)(rep, gens, cutoff, tol)
    gram = oracle.gram_bounds(frames.orbit_system(rep, gens), cutoff)
    agreement = float(np.abs(np.asarray(sb.eigenvalues) - gram.eigenvalues).max())
    oracle_A = gram.riesz_A if which == "riesz" else gram.A
    if which == "riesz":
        condition = frames.riesz_condition_check(rep, gens, sb.A, sb.B, seed=seed)
    else:
        condition = frames.frame_condition_check(rep, gens, sb.A, sb.B, samples=20, seed=seed)
    out = {"kind": sb.kind, "A": sb.A, "B": sb.B, "support_rank": sb.support_rank, "tight": sb.tight,
           "defects": {f"{which}_condition": condition},
           "oracle": {"A": oracle_A, "B": gram.B, "rank": gram.rank},
           "oracle_agreement": agreement}
    if agreement > AGREEMENT_TOL * max(1.0, sb.B):
        raise VerificationFailed(f"bracket and Gram spectra differ by {agreement:.3e}")
    return out


def run_analysis(name: str, params: dict, rep, action, gens, named, tol: float, cutoff: float, seed: int) -> dict:
    k = len(gens)
    if name == "bracket":
        return {"brackets": [[bracket(rep, gens[i], gens[j]) for j in range(k)] for i in range(k)]}
    if name == "bracket_properties":
        return verify_bracket_properties(rep, int(params.get("samples", 100)), tol, seed)
    if name == "orthonormality":
        ok, defect = frames.orthonormality_test(rep, gens, tol)
        return {"orthonormal": ok, "defects": {"orthonormality": defect}}
    if name in ("riesz_bounds", "frame_bounds"):
        return _bounds_entry(rep, gens, name.split("_")[0], cutoff, tol, seed)
    if name == "gram_oracle":
        return oracle.gram_bounds(frames.orbit_system(rep, gens), cutoff)
    if name == "parseval_generator":
        phi = frames.parseval_generator(rep, gens[0], cutoff)
        gram = oracle.gram_bounds(frames.orbit_system(rep, [phi]), cutoff)
        return {"generator": phi, "oracle": gram, "defects": {"parseval": max(abs(gram.A - 1), abs(gram.B - 1))}}
    if name == "parseval_family":
        # the invariant space generated by the configured vectors
        fam = frames.parseval_family(rep, list(orbit_span_basis(rep, gens, cutoff).T), tol, cutoff)
        gram = oracle.gram_bounds(frames.orbit_system(rep, fam), cutoff)
        return {"generators": fam, "oracle": gram, "defects": {"parseval": max(abs(gram.A - 1), abs(gram.B - 1))}}
    if name == "dual_generator":
        dual = frames.dual_generator(rep, gens[0], cutoff)
        ref = oracle.biorthogonal_oracle(frames.orbit_system(rep, [gens[0]]), cutoff)
        agreement = None if ref is None else float(np.abs(dual - ref).max())
        return {"dual": dual, "defects": {"biorthogonality": frames.biorthogonality_defect(rep, gens[0], dual)},
                "oracle_agreement": agreement}
    if name == "principal_multiplier":
        if k < 2:
            raise ConfigError("principal_multiplier needs generators [psi, phi]", "generators")
        F, defects = frames.principal_multiplier(rep, gens[0], gens[1], tol, cutoff)
        return {"multiplier": F, "defects": defects}
    if name == "membership":
        phi = load_vector(_need(params, "phi", name), rep.dim, named, f"analyses.{name}.phi")
        m = frames.membership_finitely_generated(rep, gens, phi, tol, cutoff)
        return {"member": m.member, "residual": m.residual, "multipliers": m.multipliers,
                "defects": {"helson": m.helson_defect}, "note": m.note}
    if name == "helson_axioms":
        kind = params.get("map", "periodization")
        if kind == "periodization":
            T = build_helson_map(rep, decompose_invariant(rep, list(np.eye(rep.dim)), tol, cutoff), cutoff)
        elif kind == "fourier":
            T = fourier_helson_map(rep.group)
        elif kind == "zak":
            if action is None:
                raise ConfigError("zak map needs an action representation", f"analyses.{name}.map")
            T = zak_helson_map(action)
        else:
            raise ConfigError(f"unknown Helson map {kind!r}", f"analyses.{name}.map")
        return verify_helson_axioms(T, rep, int(params.get("samples", 20)), tol, seed)
    raise ConfigError(f"unknown analysis {name!r}", "analyses")


def _error(exc: Exception) -> dict:
    return {"type": type(exc).__name__, "message": str(exc)}


def analyze(config: dict, tol=None, rank_cutoff=None, seed=None) -> tuple[dict, int]:
    """Run a parsed config; returns ``(report, exit_code)``."""
    tols = config.get("tolerances", {}) if isinstance(config, dict) else {}
    tol = float(tol if tol is not None else tols.get("tol", vnalg.TOL))
    cutoff = float(rank_cutoff if rank_cutoff is not None else tols.get("rank_cutoff", vnalg.RANK_CUTOFF))
    seed = int(seed if seed is not None else config.get("seed", 0))
    rep_cfg = _need(config, "representation", "")
    group = load_group(config["group"]) if "group" in config else None
    rep, named, action = load_representation(rep_cfg, group, tol)
    gen_cfgs = _need(config, "generators", "")
    if not isinstance(gen_cfgs, list) or not gen_cfgs:
        raise ConfigError("generators must be a non-empty list", "generators")
    gens = [load_vector(s, rep.dim, named, f"generators[{i}]") for i, s in enumerate(gen_cfgs)]
    for i, g in enumerate(gens):
        if np.linalg.norm(g) == 0:
            raise ConfigError("generator is zero", f"generators[{i}]")
    requested = []
    for i, a in enumerate(_need(config, "analyses", "")):
        name, params = (a, {}) if isinstance(a, str) else (_need(a, "name", f"analyses[{i}]"), a)
        if name not in ANALYSES:
            raise ConfigError(f"unknown analysis {name!r}", f"analyses[{i}]")
        requested.append((name, params))

    code = 0
    results = []
    for name, params in requested:
        try:
            results.append({"name": name, "result": run_analysis(name, params, rep, action, gens, named, tol, cutoff, seed)})
        except CertificationError as exc:
            results.append({"name": name, "error": _error(exc)})
            code = max(code, 2)
        except OrbitFrameError as exc:
            results.append({"name": name, "error": _error(exc)})
            code = 1 if code == 0 else code
    report = {
        "group": {"order": rep.group.order, "labels": list(rep.group.labels)},
        "representation": {"kind": rep_cfg["kind"], "dim": rep.dim},
        "settings": {"tol": tol, "rank_cutoff": cutoff, "seed": seed},
        "analyses": results,
        "status": {0: "ok", 1: "input_error", 2: "certification_failed"}[code],
    }
    return report, code


# --- demos ----------------------------------------------------------------

def _check(name, value, oracle_value, expected=None, tol=DEMO_TOL) -> dict:
    value, oracle_value = np.asarray(value, dtype=float), np.asarray(oracle_value, dtype=float)
    disc = float(np.abs(value - oracle_value).max())
    err = disc if expected is None else max(disc, float(np.abs(value - np.asarray(expected, dtype=float)).max()))
    return {"name": name, "value": value, "oracle": oracle_value, "expected": expected,
            "discrepancy": disc, "passed": err <= tol}


def _finish(report: dict) -> dict:
    report["passed"] = all(c["passed"] for c in report["checks"])
    if not report["passed"]:
        bad = [c["name"] for c in report["checks"] if not c["passed"]]
        raise VerificationFailed(f"demo checks failed: {', '.join(bad)}", ) from None
    return report


def demo_dihedral(seed: int = 0) -> dict:
    """Orbit-class brackets, tight-frame constants and periodization coefficients for D3."""
    m = d3_model()
    G, rep = m.group, m.rep
    R = vnalg.rho_all(G)
    expected = {"fixed": R.transpose(0, 2, 1).sum(axis=0), "boundary": np.eye(6) + R[3].T, "interior": np.eye(6)}
    vecs = {"fixed": m.fixed, "boundary": m.boundary, "interior": m.interior}
    checks, brackets = [], {}
    for name, v in vecs.items():
        br = bracket(rep, v, v)
        brackets[name] = br
        d = float(np.abs(br - expected[name]).max())
        checks.append({"name": f"bracket_{name}", "defect": d, "passed": d <= 1e-10})
    bounds = {}
    for name, const in (("fixed", 6.0), ("boundary", 2.0)):
        sb = frames.frame_bounds(rep, [vecs[name]])
        gram = oracle.gram_bounds(frames.orbit_system(rep, [vecs[name]]))
        bounds[name] = {"A": sb.A, "B": sb.B, "kind": sb.kind, "tight": sb.tight, "support_rank": sb.support_rank,
                        "oracle": {"A": gram.A, "B": gram.B, "rank": gram.rank}}
        checks.append(_check(f"frame_bounds_{name}", [sb.A, sb.B], [gram.A, gram.B], [const, const]))
    ok, defect = frames.orthonormality_test(rep, [m.interior])
    gram = oracle.gram_bounds(frames.orbit_system(rep, [m.interior]))
    bounds["interior"] = {"orthonormal": ok, "defect": defect, "oracle": {"A": gram.riesz_A, "B": gram.B}}
    checks.append(_check("orthonormal_interior", [1.0, 1.0], [gram.riesz_A, gram.B], [1.0, 1.0]) | {"passed": ok and
                  abs(gram.riesz_A - 1) <= DEMO_TOL and abs(gram.B - 1) <= DEMO_TOL})

    fam = frames.parseval_family(rep, list(np.eye(rep.dim)))
    fb = frames.frame_bounds(rep, fam)
    gram = oracle.gram_bounds(frames.orbit_system(rep, fam))
    checks.append(_check("parseval_family", [fb.A, fb.B], [gram.A, gram.B], [1.0, 1.0]))

    dec = decompose_invariant(rep, list(np.eye(rep.dim)))
    T = build_helson_map(rep, dec)
    axioms = verify_helson_axioms(T, rep, samples=10, seed=seed)
    checks.append({"name": "helson_axioms", "defects": axioms["defects"], "passed": axioms["passed"]})
    rng = np.random.default_rng(seed)
    phi = random_vector(rng, rep.dim)
    image = T(phi)
    coeffs, resid = [], 0.0
    for val, psi in zip(image.values, dec.generators):
        B = bracket(rep, phi, psi)
        c = np.vdot(B, val) / np.vdot(B, B)
        coeffs.append(c.real)
        resid = max(resid, float(np.abs(val - c * B).max()))
    target = [1 / np.sqrt(6), 1 / np.sqrt(2), 1.0]
    checks.append(_check("helson_coefficients", coeffs, target, target) | {"proportionality_defect": resid,
                  "passed": resid <= DEMO_TOL and np.allclose(coeffs, target, atol=DEMO_TOL, rtol=0)})
    report = {"demo": "d3", "group": list(G.labels), "dim": rep.dim, "brackets": brackets, "bounds": bounds,
              "parseval_family": {"generators": len(fam), "A": fb.A, "B": fb.B},
              "helson": {"map": T.name, "fiber_dims": dec.dims, "coefficients": coeffs, "axioms": axioms},
              "checks": checks}
    return _finish(report)


def _element(group, token) -> int:
    s = str(token)
    aliases = {"e": group.identity, "a": 1 % group.order}  # Z_n written multiplicatively
    if s in group.labels:
        return group.labels.index(s)
    if s in aliases:
        return aliases[s]
    try:
        g = int(s)
    except ValueError:
        raise ConfigError(f"unknown group element {s!r}") from None
    if not 0 <= g < group.order:
        raise ConfigError(f"element index {g} out of range")
    return g


def demo_comb(n: int, g1, g2, a: complex, b: complex) -> dict:
    """Two-pronged comb ``a delta_g1 + b delta_g2`` on Z_n with Gram and DFT cross-checks."""
    G = build_cyclic(n)
    g1, g2 = _element(G, g1), _element(G, g2)
    rep = left_regular(G)
    res = frames.comb_analysis(G, g1, g2, a, b)
    f = a * vnalg.delta(G, g1) + b * vnalg.delta(G, g2)
    gram = oracle.gram_bounds(frames.orbit_system(rep, [f]))
    fib = oracle.dft_fiberization_bounds(G, f)
    r, fr = res["riesz"], res["frame"]
    bracket_eigs = np.sort(res["bracket_eigenvalues"])[::-1]
    checks = [
        {"name": "bracket_closed_form", "defect": res["bracket_closed_form_defect"],
         "passed": res["bracket_closed_form_defect"] <= DEMO_TOL},
        _check("spectrum_vs_gram", bracket_eigs, gram.eigenvalues, tol=AGREEMENT_TOL),
        _check("spectrum_vs_dft", bracket_eigs, np.sort(fib.fibers)[::-1], tol=AGREEMENT_TOL),
        {"name": "analytic_window", "defect": res["window_defect"], "passed": res["window_defect"] <= DEMO_TOL},
        {"name": "completeness_vs_oracle", "value": res["complete"], "oracle": gram.rank == n,
         "passed": res["complete"] == (gram.rank == n)},
    ]
    if res["real_prediction"] is not None:
        checks.append({"name": "real_coefficient_prediction", "passed": res["complete"] == res["real_prediction"]})
    report = {"demo": "comb", "n": n, "g1": g1, "g2": g2, "a": complex(a), "b": complex(b),
              "complete": res["complete"], "rank": res["rank"], "analytic_window": res["analytic_window"],
              "riesz": {"kind": r.kind, "A": r.A, "B": r.B, "oracle": {"A": gram.riesz_A, "B": gram.B}},
              "frame": {"kind": fr.kind, "A": fr.A, "B": fr.B, "tight": fr.tight, "support_rank": fr.support_rank,
                        "oracle": {"A": gram.A, "B": gram.B, "rank": gram.rank}},
              "bracket_eigenvalues": bracket_eigs, "dft_fibers": fib.fibers, "checks": checks}
    if "note" in res:
        report["note"] = res["note"]
    return _finish(report)


def demo_fiberization(n: int, f) -> dict:
    """Bracket spectrum of ``f`` on Z_n next to its DFT fibers."""
    G = build_cyclic(n)
    f = np.asarray(f, dtype=complex)
    if f.shape != (n,):
        raise ConfigError(f"f has length {f.shape[0]}, expected {n}", "--f")
    eig = np.sort(np.linalg.eigvalsh(bracket(left_regular(G), f, f)))[::-1]
    fib = oracle.dft_fiberization_bounds(G, f)
    checks = [_check("spectrum_vs_dft", eig, np.sort(fib.fibers)[::-1], tol=1e-10 * max(1.0, eig[0]))]
    return _finish({"demo": "fiberization", "n": n, "f": f, "bracket_spectrum": eig, "dft_fibers": fib.fibers,
                    "max_discrepancy": checks[0]["discrepancy"], "checks": checks})


# --- entry point ----------------------------------------------------------

def _parse_f(text: str, n: int, seed: int) -> np.ndarray:
    if text == "random":
        return random_vector(np.random.default_rng(seed), n)
    try:
        return np.array([complex(t.strip()) for t in text.split(",")])
    except ValueError:
        raise ConfigError(f"cannot parse vector {text!r}", "--f") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="certification tolerance")
    common.add_argument("--rank-cutoff", type=float, default=None, help="relative eigenvalue cutoff")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--output", type=Path, default=None, help="write JSON here instead of stdout")
    common.add_argument("--verbose", action="store_true", help="summary on stderr")

    p = argparse.ArgumentParser(prog="orbitframe", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", parents=[common], help="run analyses from a JSON config")
    an.add_argument("config", type=Path)
    demo = sub.add_parser("demo", help="built-in worked examples")
    ds = demo.add_subparsers(dest="demo", required=True)
    ds.add_parser("d3", parents=[common], help="dihedral group D3 orbit model")
    comb = ds.add_parser("comb", parents=[common], help="two-pronged comb on Z_n")
    comb.add_argument("--n", type=int, required=True)
    comb.add_argument("--g1", default="0")
    comb.add_argument("--g2", default="1")
    comb.add_argument("--a", default="1")
    comb.add_argument("--b", default="1")
    fib = ds.add_parser("fiberization", parents=[common], help="bracket spectrum vs DFT on Z_n")
    fib.add_argument("--n", type=int, required=True)
    fib.add_argument("--f", default="random", help="comma-separated entries (Python complex syntax) or 'random'")
    return p


def _summary(report: dict) -> str:
    lines = []
    for c in report.get("checks", []):
        lines.append(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}")
    for a in report.get("analyses", []):
        lines.append(f"{'ERR ' + a['error']['type'] if 'error' in a else 'OK'} {a['name']}")
    return "\n".join(lines)


def _run(args) -> tuple[dict, int]:
    seed = 0 if args.seed is None else args.seed
    if args.command == "analyze":
        try:
            config = json.loads(args.config.read_text())
        except OSError as exc:
            raise ConfigError(str(exc), str(args.config)) from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON at line {exc.lineno}: {exc.msg}", str(args.config)) from None
        if not isinstance(config, dict):
            raise ConfigError("config must be a JSON object", str(args.config))
        return analyze(config, args.tol, args.rank_cutoff, args.seed)
    if args.demo == "d3":
        return demo_dihedral(seed), 0
    if args.demo == "comb":
        try:
            a, b = complex(args.a), complex(args.b)
        except ValueError:
            raise ConfigError("--a/--b must be numbers") from None
        return demo_comb(args.n, args.g1, args.g2, a, b), 0
    return demo_fiberization(args.n, _parse_f(args.f, args.n, seed)), 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = _run(args)
    except CertificationError as exc:
        report, code = {"status": "certification_failed", "error": _error(exc)}, 2
    except OrbitFrameError as exc:
        report, code = {"status": "input_error", "error": _error(exc)}, 1
    text = dumps(report)
    if args.output is not None:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    if args.verbose:
        print(_summary(report) or report.get("status", ""), file=sys.stderr)
    if "error" in report:
        print(f"error: {report['error']['type']}: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
