"""Command-line entry point.

Exit codes follow one convention everywhere: 0 for a positive result
(structure verified, object found, obstruction confirmed), 1 for a
negative mathematical outcome, 2 for usage errors, so shell pipelines
can branch on the mathematics.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from . import catalog, construction, groups, incidence, morphisms, sieve
from .errors import (
    AxiomsFail,
    GQForgeError,
    NotAGQ,
    NotIncident,
    NotRegular,
    OrderNotAdmissible,
    RangeError,
    ShapeMismatch,
)

USAGE_ERROR = 2


def _size_cap() -> int:
    raw = os.environ.get("GQFORGE_SIZE_CAP")
    return int(raw) if raw else morphisms.DEFAULT_SIZE_CAP


def _usage_error(msg: str) -> SystemExit:
    print(f"error: {msg}", file=sys.stderr)
    return SystemExit(USAGE_ERROR)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise _usage_error(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    except OSError as exc:
        raise _usage_error(f"cannot read {path}: {exc}") from exc


def _load_incidence(path: str) -> incidence.IncidenceStructure:
    return incidence.incidence_from_json(_load_json(path))


def _load_group(path: str) -> groups.FiniteGroup:
    return groups.group_from_json(_load_json(path))


def _load_action(path: str) -> tuple[tuple[int, ...], ...]:
    data = _load_json(path)
    if "perms" not in data:
        raise _usage_error(f"{path} needs a 'perms' field")
    return tuple(tuple(p) for p in data["perms"])


class _SpecParser:
    """Recursive descent for cyclic:n | product:SPEC,SPEC | file:path."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> groups.FiniteGroup:
        out = self._spec()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return out

    def _spec(self) -> groups.FiniteGroup:
        if self.text.startswith("cyclic:", self.pos):
            self.pos += len("cyclic:")
            return groups.cyclic_group(self._int())
        if self.text.startswith("product:", self.pos):
            self.pos += len("product:")
            left = self._spec()
            if not self.text.startswith(",", self.pos):
                raise ValueError("product needs two comma-separated specs")
            self.pos += 1
            return groups.direct_product(left, self._spec())
        if self.text.startswith("file:", self.pos):
            self.pos += len("file:")
            end = self.text.find(",", self.pos)
            end = len(self.text) if end < 0 else end
            path, self.pos = self.text[self.pos : end], end
            return _load_group(path)
        raise ValueError(f"unrecognized group spec at {self.pos}: {self.text[self.pos:]!r}")

    def _int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected an integer at {start}")
        return int(self.text[start : self.pos])


def group_from_spec(spec: str) -> groups.FiniteGroup:
    return _SpecParser(spec).parse()


class _Out:
    def __init__(self, args):
        self.fmt = args.format
        self.path = args.output

    def emit(self, payload: dict, text_lines: list[str]) -> None:
        if self.fmt == "json":
            body = json.dumps(payload, sort_keys=True)
        else:
            body = "\n".join(text_lines)
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(body + "\n")
        else:
            print(body)

    def stream(self, payloads, text_of) -> None:
        sink = open(self.path, "w") if self.path else sys.stdout
        try:
            for payload in payloads:
                if self.fmt == "json":
                    sink.write(json.dumps(payload, sort_keys=True) + "\n")
                else:
                    sink.write(text_of(payload) + "\n")
        finally:
            if self.path:
                sink.close()


def _certificate_payload(cert: incidence.GQCertificate) -> dict:
    return {
        "s": cert.s,
        "t": cert.t,
        "thick": cert.thick,
        "num_points": cert.num_points,
        "num_lines": cert.num_lines,
    }


def _verdict_payload(v: sieve.SieveVerdict) -> dict:
    return {
        "s": v.s,
        "c1": v.c1,
        "c2": v.c2,
        "c3": v.c3,
        "c4": v.c4,
        "c5": v.c5,
        "witness_p": v.witness_p,
        "witness_n": v.witness_n,
        "factor_hint": [list(pair) for pair in v.factor_hint],
        "pass": v.passed,
    }


def _verdict_text(payload: dict) -> str:
    bits = " ".join(
        f"{name}={'-' if payload[name] is None else int(payload[name])}"
        for name in ("c1", "c2", "c3", "c4", "c5")
    )
    extra = ""
    if payload["witness_p"] is not None:
        extra = f" p={payload['witness_p']} n={payload['witness_n']}"
    return f"s={payload['s']} {bits} pass={int(payload['pass'])}{extra}"


def _profile_payload(
    profile: construction.DeltaProfile, group: groups.FiniteGroup
) -> dict:
    return {
        "group": groups.group_to_json(group),
        "base_point": profile.base_point,
        "s": profile.s,
        "t": profile.t,
        "delta": profile.members(),
        "class_intersections": [list(p) for p in profile.class_intersections],
    }


def _profile_from_payload(data: dict):
    group = groups.group_from_json(data["group"])
    mask = 0
    for g in data["delta"]:
        mask |= 1 << g
    profile = construction.DeltaProfile(
        base_point=data["base_point"],
        delta=mask,
        s=data["s"],
        t=data["t"],
        class_intersections=tuple(tuple(p) for p in data["class_intersections"]),
    )
    return profile, group


def _yoshiara_payload(report: construction.YoshiaraReport) -> dict:
    return {
        "gcd_st": report.gcd_st,
        "passed": report.passed,
        "class_checks": [asdict(c) | {"passed": c.passed} for c in report.class_checks],
        "normal_subgroups": [
            {"members": list(nc.members), "divides": nc.divides}
            for nc in report.normal_checks
        ],
    }


def cmd_verify(args) -> int:
    q = _load_incidence(args.incidence)
    out = _Out(args)
    try:
        cert = incidence.verify_gq(q)
    except NotAGQ as exc:
        out.emit(
            {"ok": False, "witness": exc.witness},
            [f"not a GQ: {exc.witness}"],
        )
        return 1
    payload = {"ok": True, "certificate": _certificate_payload(cert)}
    out.emit(payload, [f"GQ of order ({cert.s},{cert.t}); "
                       f"{cert.num_points} points, {cert.num_lines} lines"])
    return 0


def cmd_dual(args) -> int:
    q = _load_incidence(args.incidence)
    d = incidence.dual(q)
    payload = incidence.incidence_to_json(d)
    _Out(args).emit(payload, [json.dumps(payload, sort_keys=True)])
    return 0


def cmd_aut(args) -> int:
    q = _load_incidence(args.incidence)
    group = morphisms.automorphisms(q, size_cap=_size_cap())
    payload = {
        "degree": group.degree,
        "order": group.order,
        "generators": [list(g) for g in group.generators],
    }
    _Out(args).emit(
        payload,
        [f"automorphism group of order {group.order} "
         f"({len(group.generators)} generators on {group.degree} points)"],
    )
    return 0


def cmd_polarity(args) -> int:
    q = _load_incidence(args.incidence)
    out = _Out(args)
    pol = morphisms.find_polarity(q, size_cap=_size_cap())
    if pol is None:
        out.emit({"found": False}, ["no polarity"])
        return 1
    payload = {
        "found": True,
        "point_to_line": list(pol.point_to_line),
        "line_to_point": list(pol.line_to_point),
    }
    out.emit(payload, [f"polarity found: {list(pol.point_to_line)}"])
    return 0


def cmd_iso(args) -> int:
    q1 = _load_incidence(args.first)
    q2 = _load_incidence(args.second)
    out = _Out(args)
    witness = morphisms.isomorphic(q1, q2, size_cap=_size_cap())
    if witness is None:
        out.emit({"isomorphic": False}, ["not isomorphic"])
        return 1
    payload = {
        "isomorphic": True,
        "point_map": list(witness.point_map),
        "line_map": list(witness.line_map),
    }
    out.emit(payload, [f"isomorphic; point map {list(witness.point_map)}"])
    return 0


def cmd_build_sigma(args) -> int:
    if args.spec:
        data = _load_json(args.spec)
        if "group" not in data or "sigma" not in data:
            raise _usage_error(f"{args.spec} needs 'group' and 'sigma' fields")
        group = group_from_spec(data["group"])
        members = [int(x) for x in data["sigma"]]
    elif args.group and args.sigma:
        group = group_from_spec(args.group)
        members = [int(x) for x in args.sigma.split(",")]
    else:
        raise _usage_error("give either --spec FILE or both --group and --sigma")
    out = _Out(args)
    try:
        built = construction.build_gq_from_sigma(
            group, construction.sigma_set(group, members)
        )
    except AxiomsFail as exc:
        report = exc.report
        out.emit(
            {
                "ok": False,
                "failed_axiom": report.failed_axiom,
                "witness": report.witness,
            },
            [f"axioms fail: {report.failed_axiom} witness {report.witness}"],
        )
        return 1
    if args.point_action_out:
        with open(args.point_action_out, "w") as fh:
            json.dump({"perms": [list(p) for p in built.point_action]}, fh)
    if args.line_action_out:
        with open(args.line_action_out, "w") as fh:
            json.dump({"perms": [list(p) for p in built.line_action]}, fh)
    payload = incidence.incidence_to_json(built.structure)
    out.emit(payload, [json.dumps(payload, sort_keys=True)])
    return 0


def cmd_extract_sigma(args) -> int:
    q = _load_incidence(args.gq)
    group = _load_group(args.group)
    point_action = _load_action(args.point_action)
    line_action = _load_action(args.line_action)
    out = _Out(args)
    try:
        found = construction.extract_sigma(
            q, group, point_action, line_action,
            base_point=args.base_point, base_line=args.base_line,
        )
    except (NotRegular, NotIncident) as exc:
        out.emit({"ok": False, "error": str(exc)}, [str(exc)])
        return 1
    payload = {"ok": True, "sigma": list(found.members)}
    out.emit(payload, [f"sigma = {list(found.members)}"])
    return 0


def cmd_search_sigma(args) -> int:
    group = group_from_spec(args.group)
    out = _Out(args)
    try:
        found = construction.search_sigma(group, reduce_symmetry=args.reduce)
    except OrderNotAdmissible as exc:
        out.emit({"ok": False, "error": str(exc), "sigmas": []}, [str(exc)])
        return 1
    payload = {"ok": True, "sigmas": [list(s.members) for s in found]}
    out.emit(payload, [f"{len(found)} sigma-set(s): "
                       + "; ".join(str(list(s.members)) for s in found)])
    return 0 if found else 1


def cmd_catalog(args) -> int:
    q = catalog.fixture(args.name)
    payload = incidence.incidence_to_json(q)
    _Out(args).emit(payload, [json.dumps(payload, sort_keys=True)])
    return 0


def cmd_delta(args) -> int:
    q = _load_incidence(args.gq)
    group = _load_group(args.group)
    action = _load_action(args.action)
    out = _Out(args)
    try:
        profile = construction.delta_profile(q, group, action, base_point=args.base)
    except (NotRegular, NotAGQ) as exc:
        out.emit({"ok": False, "error": str(exc)}, [str(exc)])
        return 1
    payload = _profile_payload(profile, group)
    out.emit(
        payload,
        [f"|Delta| = {profile.size} at base {profile.base_point}; "
         f"order ({profile.s},{profile.t})"],
    )
    return 0


def cmd_yoshiara(args) -> int:
    profile, group = _profile_from_payload(_load_json(args.profile))
    out = _Out(args)
    report = construction.yoshiara_checks(profile, group)
    payload = _yoshiara_payload(report)
    out.emit(
        payload,
        [f"gcd(s,t) = {report.gcd_st}; "
         f"{len(report.class_checks)} class checks, "
         f"{len(report.normal_checks)} normal subgroups; "
         f"passed = {report.passed}"],
    )
    return 0 if report.passed else 1


def cmd_sieve(args) -> int:
    out = _Out(args)
    verdicts = sieve.sieve_range(
        args.start, args.stop, emit=args.emit,
        threads=args.threads, segment_bits=args.segment_bits,
    )
    survivors = 0

    def payloads():
        nonlocal survivors
        for v in verdicts:
            if v.passed:
                survivors += 1
            yield _verdict_payload(v)

    out.stream(payloads(), _verdict_text)
    return 1 if survivors else 0


def cmd_feasibility(args) -> int:
    kind, _, raw = args.order.partition(":")
    value = int(raw)
    if kind == "s":
        report = sieve.sz_feasibility(value)
    elif kind == "uq":
        report = sieve.uq_feasibility(value)
    else:
        raise _usage_error(f"unknown order kind {kind!r} (use s:N or uq:N)")
    payload = {
        "parameter": report.parameter,
        "value": report.value,
        "empty": report.empty,
        "candidates": [asdict(c) for c in report.candidates],
    }
    lines = [f"{report.parameter} = {report.value}: "
             + ("no (q, m) passes all constraints" if report.empty else "candidates survive")]
    for c in report.candidates:
        lines.append(f"  q={c.q} m={c.m} A={int(c.a)} B={int(c.b)} C={int(c.c)}")
    _Out(args).emit(payload, lines)
    return 0 if report.empty else 1


def cmd_identities(args) -> int:
    report = sieve.verify_identities()
    payload = {
        "failures": report.total_failures,
        "families": [
            {"name": f.name, "cases": f.cases, "failures": f.failures}
            for f in report.families
        ],
    }
    lines = [f"{f.name}: {f.cases} cases, {len(f.failures)} failures"
             for f in report.families]
    _Out(args).emit(payload, lines)
    return 0 if report.passed else 1


def cmd_params(args) -> int:
    check = incidence.parameter_feasible(args.s, args.t)
    payload = {"s": args.s, "t": args.t, "ok": check.ok, "reason": check.reason}
    _Out(args).emit(payload, [f"({args.s},{args.t}): {check.ok} ({check.reason})"])
    return 0 if check.ok else 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gqforge",
        description="Generalized quadrangles from group sigma-sets. "
        "Exit codes: 0 positive result, 1 negative result, 2 usage error.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the quadrangle axioms")
    p.add_argument("incidence")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dual", help="swap points and lines")
    p.add_argument("incidence")
    _add_common(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("aut", help="automorphism group (part-preserving)")
    p.add_argument("incidence")
    _add_common(p)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("polarity", help="order-two point/line swap, if any")
    p.add_argument("incidence")
    _add_common(p)
    p.set_defaults(func=cmd_polarity)

    p = sub.add_parser("iso", help="isomorphism test with witness")
    p.add_argument("first")
    p.add_argument("second")
    _add_common(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("build-sigma", help="build the quadrangle of a sigma-set")
    p.add_argument("--group", help="cyclic:n | product:SPEC,SPEC | file:path")
    p.add_argument("--sigma", help="comma-separated element indices")
    p.add_argument("--spec", help='sigma JSON file: {"group": SPEC, "sigma": [...]}')
    p.add_argument("--point-action-out", default=None)
    p.add_argument("--line-action-out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_build_sigma)

    p = sub.add_parser("extract-sigma", help="read sigma off a biregular action")
    p.add_argument("--gq", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--point-action", required=True)
    p.add_argument("--line-action", required=True)
    p.add_argument("--base-point", type=int, default=0)
    p.add_argument("--base-line", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_extract_sigma)

    p = sub.add_parser("search-sigma", help="exhaustive sigma-set search")
    p.add_argument("--group", required=True)
    p.add_argument("--reduce", action="store_true",
                   help="one representative per automorphism orbit (|G| <= 16)")
    _add_common(p)
    p.set_defaults(func=cmd_search_sigma)

    p = sub.add_parser("catalog", help="emit a named fixture")
    p.add_argument("name", choices=sorted(catalog.FIXTURES))
    _add_common(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("delta", help="Delta profile of a point-regular action")
    p.add_argument("--gq", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--action", required=True)
    p.add_argument("--base", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("yoshiara", help="class checks on a Delta profile")
    p.add_argument("--profile", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_yoshiara)

    p = sub.add_parser("sieve", help="biregular-order sieve over a range of s")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.add_argument("--emit", choices=("survivors", "all"), default="survivors")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--segment-bits", type=int, default=sieve.DEFAULT_SEGMENT_BITS)
    _add_common(p)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("feasibility", help="Suzuki-socle constraints for one order")
    p.add_argument("--order", required=True, help="s:N for order (N,N), uq:N for (N^2,N^3)")
    _add_common(p)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("identities", help="re-verify the arithmetic identity grids")
    _add_common(p)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("params", help="parameter feasibility for (s,t)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_params)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, int) or exc.code is None:
            return exc.code or 0
        print(exc.code, file=sys.stderr)
        return USAGE_ERROR
    except RangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ShapeMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GQForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
