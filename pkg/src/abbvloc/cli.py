"""Batch command line front end.

Parses JSON inputs, dispatches to the computation modules, and renders
exact results with their verification checks.  Output is deterministic for
a fixed (command, input, seed) triple: exit code 0 when every check passes,
1 when a check fails, 2 on malformed input.

JSON schemas (rationals are "p/q" strings):

  orbit system: {"dim_t": int, "b": [...], "codim_half": int,
                 "orbits": [{"length": {"coeff": "p/q", "pi_power": int},
                             "moment": [...], "weights": [[...], ...]}]}
  cone:         {"dim": int, "lattice_basis": [[...], ...],
                 "pi_scale_exponent": int, "normals": [[int, ...], ...],
                 "reeb": [...]}
  polytope:     {"dim": int, "normals": [[int, ...], ...], "reeb": [...]}
  root data:    {"dim_t": int, "roots": [[...], ...],
                 "weyl_reps": [[[...], ...], ...], "b": [...], "p": [...]}

Multiindex degree convention: entries of J are summed in complex degree
(so the admissible J for the secondary numbers of complex codimension m
satisfy sum(J) = m; the real-degree count in the literature is 2m).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from math import factorial

from .core import Matrix, PiScalar, Vector, canonical_multiindex, partitions, rat, rat_str
from .engine import (
    OrbitDatum,
    OrbitSystem,
    check_v_independence,
    dh_series,
    localize_characteristic,
    localize_volume,
    weighted_sphere_system,
)
from .errors import (
    AllSamplesPoles,
    InconsistentSamples,
    InputError,
    LocalizationError,
    PoleAtSample,
)
from .homogeneous import (
    RootData,
    homogeneous_volume,
    stiefel_closed_form,
    stiefel_four_sum,
    stiefel_so5_so3,
)
from .polytope import (
    HPolytope,
    lawrence_volume,
    msy_check,
    random_functional,
    triangulation_volume,
)
from .sampling import SplitMix64, sample_distinct_positive, sample_vector
from .secondary import (
    WeightedSphereFoliation,
    asuke_closed_form,
    asuke_number,
    check_w1_identity,
)
from .toric import GoodCone, orbit_system_from_cone, toric_volume

DEFAULT_SAMPLES = 10


class _CliInputError(InputError):
    """Input problems detected at the CLI layer; reported as InputError."""


def _default_seed() -> int:
    raw = os.environ.get("ABBVLOC_SEED")
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError as exc:
        raise _CliInputError(f"ABBVLOC_SEED must be an integer, got {raw!r}") from exc


def _rat_list(text: str) -> list:
    try:
        return [rat(part) for part in text.split(",") if part.strip() != ""]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise _CliInputError(f"cannot parse rational list {text!r}") from exc


def _int_list(text: str) -> list:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise _CliInputError(f"cannot parse integer list {text!r}") from exc


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliInputError(f"cannot read JSON input {path!r}: {exc}") from exc


def _vector(doc) -> Vector:
    return Vector(rat(x) for x in doc)


def _load_orbit_system(doc) -> OrbitSystem:
    try:
        orbits = tuple(
            OrbitDatum(
                length=PiScalar(rat(o["length"]["coeff"]), int(o["length"]["pi_power"])),
                moment=_vector(o["moment"]),
                weights=tuple(_vector(wt) for wt in o["weights"]),
            )
            for o in doc["orbits"]
        )
        return OrbitSystem(
            dim_t=int(doc["dim_t"]),
            b=_vector(doc["b"]),
            codim_half=int(doc["codim_half"]),
            orbits=orbits,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliInputError(f"malformed orbit system document: {exc}") from exc


def _load_cone(doc) -> GoodCone:
    try:
        basis = doc.get("lattice_basis")
        return GoodCone(
            dim=int(doc["dim"]),
            normals=tuple(_vector(v) for v in doc["normals"]),
            reeb=_vector(doc["reeb"]),
            lattice_basis=None if basis is None else Matrix(basis),
            pi_scale_exponent=int(doc.get("pi_scale_exponent", 1)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliInputError(f"malformed cone document: {exc}") from exc


def _load_root_data(doc) -> RootData:
    try:
        return RootData(
            dim_t=int(doc["dim_t"]),
            roots_quotient=tuple(_vector(r) for r in doc["roots"]),
            weyl_reps=tuple(Matrix(m) for m in doc["weyl_reps"]),
            b=_vector(doc["b"]),
            projection=_vector(doc["p"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliInputError(f"malformed root data document: {exc}") from exc


def _load_section(doc) -> HPolytope:
    if "pi_scale_exponent" in doc or "lattice_basis" in doc:
        return HPolytope.from_cone(_load_cone(doc))
    try:
        return HPolytope.from_halfspaces(
            normals=tuple(_vector(v) for v in doc["normals"]),
            reeb=_vector(doc["reeb"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliInputError(f"malformed polytope document: {exc}") from exc


def _sample_nonpole(dim: int, rng: SplitMix64, evaluate, budget: int = 100):
    """Evaluate at sampled vectors, skipping poles; returns (v, value)."""
    for _ in range(budget):
        v = sample_vector(dim, rng)
        try:
            return v, evaluate(v)
        except PoleAtSample:
            continue
    raise AllSamplesPoles("no pole-free sample vector found")


# ---------------------------------------------------------------------------
# report assembly


def _check(name: str, ok: bool, detail: str = "") -> dict:
    return {"name": name, "pass": bool(ok), "detail": detail}


def _report(command: str, value: PiScalar, checks: list, **payload) -> dict:
    rep = {
        "command": command,
        "exact": value.exact_str(),
        "coeff": rat_str(value.coeff),
        "pi_power": value.pi_power,
        "decimal": value.to_decimal(12),
        "checks": checks,
    }
    rep.update(payload)
    return rep


def _emit(report: dict, json_mode: bool) -> int:
    if json_mode:
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"command: {report['command']}\n")
        sys.stdout.write(f"exact: {report['exact']}\n")
        sys.stdout.write(f"decimal (advisory): {report['decimal']}\n")
        for key in sorted(report):
            if key in ("command", "exact", "decimal", "coeff", "pi_power", "checks"):
                continue
            sys.stdout.write(f"{key}: {report[key]}\n")
        sys.stdout.write("checks:\n")
        for chk in report["checks"]:
            mark = "pass" if chk["pass"] else "FAIL"
            detail = f" ({chk['detail']})" if chk["detail"] else ""
            sys.stdout.write(f"  [{mark}] {chk['name']}{detail}\n")
    return 0 if all(c["pass"] for c in report["checks"]) else 1


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_volume_sphere(args) -> dict:
    weights = _rat_list(args.weights)
    system = weighted_sphere_system(weights)
    n = system.codim_half
    product = Fraction(1)
    for w in weights:
        product *= w
    closed = PiScalar(Fraction(2) / (product * factorial(n)), n + 1)
    checks = []
    outcome, consistent, detail = _run_independence(system, args.samples, args.seed)
    checks.append(_check("v-independence", consistent, detail))
    value = outcome if consistent else closed
    checks.append(
        _check(
            "closed-form match 2*pi^(n+1)/(n! prod w)",
            consistent and value == closed,
            f"expected {closed.exact_str()}",
        )
    )
    return _report("volume-sphere", value, checks, weights=[rat_str(w) for w in weights])


def _run_independence(system, samples, seed, numerator=None):
    try:
        outcome = check_v_independence(system, numerator=numerator, samples=samples, seed=seed)
        return (
            outcome.value,
            True,
            f"{len(outcome.samples_used)} samples, {outcome.rejected_poles} poles rejected",
        )
    except InconsistentSamples as exc:
        return PiScalar.zero(), False, str(exc)


def _cmd_volume_toric(args) -> dict:
    cone = _load_cone(_load_json(args.input))
    system = orbit_system_from_cone(cone)
    checks = []
    value, consistent, detail = _run_independence(system, args.samples, args.seed)
    checks.append(_check("v-independence", consistent, detail))
    rng = SplitMix64(args.seed)
    agree = True
    tested = 0
    for _ in range(100):
        if tested == args.samples:
            break
        v = sample_vector(cone.dim, rng)
        try:
            direct = toric_volume(cone, v)
        except PoleAtSample:
            continue
        tested += 1
        if direct != value:
            agree = False
            break
    checks.append(
        _check(
            "two-route equality (determinant formula vs orbit data)",
            consistent and agree and tested > 0,
            f"{tested} samples compared",
        )
    )
    return _report("volume-toric", value, checks)


def _cmd_lawrence(args) -> dict:
    section = _load_section(_load_json(args.input))
    rng = SplitMix64(args.seed)
    f1 = random_functional(section, rng)
    f2 = random_functional(section, rng)
    vol1 = lawrence_volume(section, f1)
    vol2 = lawrence_volume(section, f2)
    tri = triangulation_volume(section)
    checks = [
        _check("functional independence", vol1 == vol2, f"second value {rat_str(vol2)}"),
        _check("triangulation oracle match", vol1 == tri, f"triangulation {rat_str(tri)}"),
    ]
    return _report("lawrence", PiScalar(vol1, 0), checks)


def _cmd_polytope_volume(args) -> dict:
    section = _load_section(_load_json(args.input))
    tri = triangulation_volume(section)
    alt = triangulation_volume(section, base_index=len(section.vertices) - 1)
    rng = SplitMix64(args.seed)
    law = lawrence_volume(section, random_functional(section, rng))
    checks = [
        _check("base-vertex independence", tri == alt, f"alternate base {rat_str(alt)}"),
        _check("Lawrence cross-check", tri == law, f"Lawrence {rat_str(law)}"),
    ]
    return _report(
        "polytope-volume", PiScalar(tri, 0), checks, vertex_count=len(section.vertices)
    )


def _cmd_msy_check(args) -> dict:
    cone = _load_cone(_load_json(args.input))
    result = msy_check(cone, seed=args.seed)
    checks = [
        _check(
            "cone volume equals 2 pi^(n+1) * section volume",
            result.equal,
            f"rhs {result.rhs.exact_str()}",
        )
    ]
    return _report(
        "msy-check",
        result.lhs,
        checks,
        section_volume=rat_str(result.section_volume),
    )


def _cmd_localize(args) -> dict:
    system = _load_orbit_system(_load_json(args.input))
    if args.j is not None:
        J = canonical_multiindex(_int_list(args.j))
        if args.leaf_integrals is None:
            raise _CliInputError("characteristic mode requires --leaf-integrals")
        leaf = [PiScalar(c, 0) for c in _rat_list(args.leaf_integrals)]
        rng = SplitMix64(args.seed)
        values = []
        for _ in range(100):
            if len(values) == max(2, args.samples):
                break
            v = sample_vector(system.dim_t, rng)
            try:
                values.append((v, localize_characteristic(system, J, leaf, v)))
            except PoleAtSample:
                continue
        if not values:
            raise AllSamplesPoles("no pole-free sample vector found")
        value = values[0][1]
        consistent = all(val == value for _, val in values)
        checks = [
            _check("v-independence", consistent, f"{len(values)} samples"),
        ]
        return _report("localize", value, checks, multiindex=list(J))
    checks = []
    value, consistent, detail = _run_independence(system, args.samples, args.seed)
    checks.append(_check("v-independence", consistent, detail))
    return _report("localize", value, checks)


def _cmd_dh(args) -> dict:
    system = _load_orbit_system(_load_json(args.input))
    rng = SplitMix64(args.seed)
    n = system.codim_half
    order = max(args.order, 0)
    v, coeffs = _sample_nonpole(
        system.dim_t, rng, lambda vv: dh_series(system, vv, order)
    )
    checks = [
        _check(
            "coefficients below codim vanish",
            all(coeffs[s].is_zero for s in range(min(n, order + 1))),
            f"orders 0..{min(n, order + 1) - 1}",
        )
    ]
    if order >= n:
        vol = localize_volume(system, v)
        checks.append(
            _check("order-n coefficient equals localized volume", coeffs[n] == vol, "")
        )
    return _report(
        "dh",
        coeffs[-1],
        checks,
        coefficients=[c.exact_str() for c in coeffs],
    )


def _cmd_stiefel(args) -> dict:
    w = _rat_list(args.w)
    if len(w) != 3:
        raise _CliInputError("--w must have exactly three entries")
    rng = SplitMix64(args.seed)
    closed = stiefel_closed_form(w)
    v1, four1 = _sample_nonpole(3, rng, lambda v: stiefel_four_sum(w, v))
    v2, four2 = _sample_nonpole(3, rng, lambda v: stiefel_four_sum(w, v))
    engine = homogeneous_volume(stiefel_so5_so3(), Vector(w), v1)
    checks = [
        _check("closed-form match", four1 == closed, f"expected {closed.exact_str()}"),
        _check("sample independence", four1 == four2, f"second sample {four2.exact_str()}"),
        _check("root-data engine match", engine == four1, f"engine {engine.exact_str()}"),
    ]
    return _report("stiefel", four1, checks, w=[rat_str(c) for c in w])


def _cmd_homogeneous(args) -> dict:
    if args.input is not None:
        rd = _load_root_data(_load_json(args.input))
    elif args.fixture == "stiefel-so5-so3":
        rd = stiefel_so5_so3()
    else:
        raise _CliInputError(f"unknown fixture {args.fixture!r}")
    b_prime = Vector(_rat_list(args.b_prime))
    rng = SplitMix64(args.seed)
    values = []
    for _ in range(100):
        if len(values) == max(2, args.samples):
            break
        v = sample_vector(rd.dim_t, rng)
        try:
            values.append(homogeneous_volume(rd, b_prime, v))
        except PoleAtSample:
            continue
    if not values:
        raise AllSamplesPoles("no pole-free sample vector found")
    value = values[0]
    checks = [
        _check(
            "v-independence",
            all(val == value for val in values),
            f"{len(values)} samples",
        )
    ]
    return _report("homogeneous", value, checks)


def _cmd_check_w1(args) -> dict:
    m = args.m
    if m < 1:
        raise _CliInputError("--m must be a positive integer")
    rng = SplitMix64(args.seed)
    checks = []
    all_ok = True
    for J in partitions(m):
        ok = True
        for _ in range(args.trials):
            w = sample_distinct_positive(m + 1, rng)
            if not check_w1_identity(m, J, w):
                ok = False
                break
        all_ok = all_ok and ok
        checks.append(
            _check(f"identity for J={list(J)}", ok, f"{args.trials} random weight vectors")
        )
    return _report("check-w1", PiScalar(1 if all_ok else 0, 0), checks, m=m)


def _cmd_secondary(args) -> dict:
    weights = _rat_list(args.weights)
    J = canonical_multiindex(_int_list(args.j))
    foliation = WeightedSphereFoliation(m=len(weights) - 1, w=tuple(weights))
    closed = asuke_closed_form(foliation, J)
    rng = SplitMix64(args.seed)
    values = []
    for _ in range(100):
        if len(values) == max(2, args.samples):
            break
        v = sample_vector(len(weights), rng)
        try:
            values.append(asuke_number(foliation, J, v))
        except PoleAtSample:
            continue
    if not values:
        raise AllSamplesPoles("no pole-free sample vector found")
    value = values[0]
    checks = [
        _check("v-independence", all(val == value for val in values), f"{len(values)} samples"),
        _check("closed-form match s1 sJ / s(m+1)", value == closed, f"expected {rat_str(closed)}"),
    ]
    return _report(
        "secondary",
        PiScalar(value, 0),
        checks,
        multiindex=list(J),
        weights=[rat_str(w) for w in weights],
    )


def _cmd_check_v_independence(args) -> dict:
    system = _load_orbit_system(_load_json(args.input))
    value, consistent, detail = _run_independence(system, args.samples, args.seed)
    checks = [_check("v-independence", consistent, detail)]
    return _report("check-v-independence", value, checks)


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abbvloc",
        description=(
            "Exact localized sums over closed orbits: sphere and toric "
            "volumes, polytope volumes, Duistermaat-Heckman coefficients "
            "and secondary characteristic numbers, each verified against "
            "an independent oracle."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=None, help="sampling seed (default 42, env ABBVLOC_SEED)")
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="number of sample vectors")
        return p

    p = add("volume-sphere", _cmd_volume_sphere, help="volume of a weighted odd sphere")
    p.add_argument("--weights", required=True, help="comma-separated positive rationals")

    p = add("volume-toric", _cmd_volume_toric, help="volume from a moment cone")
    p.add_argument("--input", required=True, help="cone JSON file or - for stdin")

    p = add("lawrence", _cmd_lawrence, help="section volume by the vertex formula")
    p.add_argument("--input", required=True, help="cone or polytope JSON file")

    p = add("polytope-volume", _cmd_polytope_volume, help="section volume by triangulation")
    p.add_argument("--input", required=True, help="cone or polytope JSON file")

    p = add("msy-check", _cmd_msy_check, help="cone volume vs section volume bridge")
    p.add_argument("--input", required=True, help="cone JSON file")

    p = add("localize", _cmd_localize, help="localized sum over an orbit system")
    p.add_argument("--input", required=True, help="orbit system JSON file")
    p.add_argument("--j", default=None, help="multiindex for characteristic mode")
    p.add_argument("--leaf-integrals", default=None, help="per-orbit rational integrals")

    p = add("dh", _cmd_dh, help="Duistermaat-Heckman series coefficients")
    p.add_argument("--input", required=True, help="orbit system JSON file")
    p.add_argument("--order", type=int, default=4, help="highest coefficient order")

    p = add("stiefel", _cmd_stiefel, help="volume of the deformed SO(5)/SO(3)")
    p.add_argument("--w", required=True, help="Reeb deformation x,y,z")

    p = add("homogeneous", _cmd_homogeneous, help="volume from root data")
    p.add_argument("--input", default=None, help="root data JSON file")
    p.add_argument("--fixture", default="stiefel-so5-so3", help="built-in fixture name")
    p.add_argument("--b-prime", required=True, help="deformed Reeb element")

    p = add("check-w1", _cmd_check_w1, help="elementary symmetric polynomial identity")
    p.add_argument("--m", type=int, required=True, help="degree (number of values minus one)")
    p.add_argument("--trials", type=int, default=50, help="random weight vectors per multiindex")

    p = add("secondary", _cmd_secondary, help="secondary characteristic number")
    p.add_argument("--weights", required=True, help="comma-separated distinct positive rationals")
    p.add_argument("--j", required=True, help="multiindex, complex degree = codimension")

    p = add("check-v-independence", _cmd_check_v_independence, help="resample a localized volume")
    p.add_argument("--input", required=True, help="orbit system JSON file")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        report = args.handler(args)
        return _emit(report, args.json)
    except LocalizationError as exc:
        name = type(exc).__name__
        if name.startswith("_"):
            name = "InputError"
        error = {"error": {"type": name, "message": str(exc)}}
        sys.stdout.write(json.dumps(error, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
