"""Command line interface: describe, schur, qindex, support, finite-dim, wexp."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .characters import CharacterError
from .cyclo import CycloNum, LaurentPoly
from .dunkl import SingularPairing, choose_lambda, exp_series_numeric, singular_hyperplanes
from .groups import GroupTooLarge, build_from_spec, coordinate_names, strata
from .hecke import (
    Gr1nParams,
    Undecidable,
    ingest_schur_table,
    principal_schur,
    q_index,
)
from .support import ParamPoint, support_via_exponential, support_via_schur

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDABLE, EXIT_INTERNAL = 0, 2, 3, 4


class InputError(ValueError):
    pass


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, CycloNum):
        return obj.to_json()
    if isinstance(obj, LaurentPoly):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _load_json_arg(text: str):
    """Inline JSON, or @path to a JSON file."""
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def load_group(spec: str):
    s = spec.strip()
    try:
        if s.startswith("{") or s.startswith("@"):
            return build_from_spec(_load_json_arg(s))
        return build_from_spec(s)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise InputError(f"bad group spec: {exc}") from exc


def load_point(g, args) -> ParamPoint:
    if args.gr1n:
        data = _load_json_arg(args.gr1n)
        data = data.get("gr1n", data)
        kind = g.kind
        if kind.get("kind") == "cyclic":
            r, n = kind["n"], 1
        elif kind.get("kind") == "grpn" and kind.get("p") == 1:
            r, n = kind["r"], kind["n"]
        else:
            raise InputError("--gr1n needs a G(r,1,n) group")
        params = Gr1nParams(r, n, Fraction(str(data.get("c0", 0))), [Fraction(str(x)) for x in data.get("d", [])])
        return ParamPoint.from_gr1n(g, params)
    if args.c is None:
        raise InputError("give --c or --gr1n")
    text = args.c.strip()
    if text.startswith("{") or text.startswith("@"):
        data = _load_json_arg(text)
        data = data.get("c", data)
    else:
        data = text
    try:
        return ParamPoint.parse(g, data)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def parse_lambda(text: str | None, rank: int):
    if text is None:
        return None
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != rank:
        raise InputError(f"--lambda needs {rank} entries")
    return [CycloNum.rational(Fraction(p)) for p in parts]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_describe(args) -> dict:
    g = load_group(args.group)
    orbits = []
    for label in g.orbit_labels:
        hs = [h for h in g.hyperplanes if h.orbit == label]
        orbits.append({"label": label, "hyperplanes": len(hs), "n_H": hs[0].order})
    return {
        "order": g.order,
        "rank": g.rank,
        "reflections": len(g.reflections),
        "hyperplanes": len(g.hyperplanes),
        "hyperplane_orbits": orbits,
        "coordinates": coordinate_names(g),
        "strata": [
            {
                "id": st.orbit_id,
                "name": st.name,
                "dimension": st.dimension,
                "parabolic_order": len(st.parabolic),
                "standard_subset": list(st.standard_subset) if st.standard_subset is not None else None,
                "members": len(st.members),
                "below": sorted(st.below),
            }
            for st in strata(g)
        ],
    }


def _describe_text(rep: dict) -> str:
    lines = [
        f"order {rep['order']}, rank {rep['rank']}, {rep['reflections']} reflections, {rep['hyperplanes']} hyperplanes",
        "orbits: " + ", ".join(f"{o['label']} ({o['hyperplanes']} hyperplanes, n_H={o['n_H']})" for o in rep["hyperplane_orbits"]),
        "coordinates: " + " ".join(rep["coordinates"]),
        f"{len(rep['strata'])} strata:",
    ]
    for st in rep["strata"]:
        lines.append(f"  {st['id']:3d}  dim {st['dimension']}  {st['name']:<12} |W_S|={st['parabolic_order']}")
    return "\n".join(lines)


def cmd_schur(args) -> dict:
    if args.schur_table is not None or args.table_group:
        table = ingest_schur_table(args.schur_table)
        names = [args.table_group] if args.table_group else sorted({k[0] for k in table.keys()})
        rows = []
        for name in names:
            found = table.rows_for(name)
            if not found:
                raise InputError(f"no table rows for {name}")
            rows.extend({"group": name, "parabolic": p, "notation": s.notation()} for p, s in found.items())
        return {"rows": rows}
    g = load_group(args.group)
    s = principal_schur(g, bound=args.unity_bound)
    return {"notation": s.notation(), "schur": s.to_json()}


def cmd_qindex(args) -> dict:
    g = load_group(args.group)
    out = []
    for st in strata(g):
        s = q_index(g, st, bound=args.unity_bound)
        out.append({"stratum": st.orbit_id, "name": st.name, "notation": s.notation(), "schur": s.to_json()})
    return {"q_indices": out}


def cmd_support(args) -> dict:
    g = load_group(args.group)
    point = load_point(g, args)
    out = {}
    if args.route in ("schur", "both"):
        out["schur"] = support_via_schur(g, point, bound=args.unity_bound).to_json()
    if args.route in ("exponential", "both"):
        out["exponential"] = support_via_exponential(g, point, args.degree, seed=args.seed).to_json()
    return out


def cmd_finite_dim(args) -> dict:
    g = load_group(args.group)
    point = load_point(g, args)
    res = support_via_schur(g, point, bound=args.unity_bound)
    return {"finite_dimensional": res.finite_dimensional, "parameters": point.to_json()}


def cmd_wexp(args) -> dict:
    g = load_group(args.group)
    lam = parse_lambda(args.lam, g.rank)
    if lam is None:
        st = strata(g)[-1]
        lam = choose_lambda(g, st, seed=args.seed)
    if args.c is not None or args.gr1n:
        point = load_point(g, args)
        try:
            series = exp_series_numeric(g, lam, args.degree, point.coords)
        except SingularPairing as exc:
            return {"lambda": lam, "parameters": point.to_json(), "singular_degree": exc.degree}
        comps = []
        for d in range(args.degree + 1):
            for e, v in zip(series.monomials[d], series.components[d]):
                if not v.is_zero():
                    comps.append({"monomial": list(e), "coefficient": v.as_fraction() if v.is_rational() else v})
        return {"lambda": lam, "parameters": point.to_json(), "coefficients": comps, "singular_degrees": series.singular_degrees}
    res = singular_hyperplanes(g, lam, args.degree, seed=args.seed)
    series = res["series"]
    comps = []
    for d in range(args.degree + 1):
        for e in series.monomials[d]:
            num, den = series.coefficient(e)
            if not num.is_zero():
                comps.append({"monomial": list(e), "numerator": str(num), "denominator": str(den)})
    return {
        "lambda": lam,
        "up_to_degree": args.degree,
        "coefficients": comps,
        "denominators": [[str(f) for f in fs] for fs in series.degree_factors[1:]],
        "singular_hyperplanes": [
            {"form": str(h.form), "condition": h.describe(), "first_degree": h.degree, "matches": [list(m) for m in h.matches]}
            for h in res["hyperplanes"]
        ],
    }


COMMANDS = {
    "describe": cmd_describe,
    "schur": cmd_schur,
    "qindex": cmd_qindex,
    "support": cmd_support,
    "finite-dim": cmd_finite_dim,
    "wexp": cmd_wexp,
}


def _text(command: str, rep: dict) -> str:
    if command == "describe":
        return _describe_text(rep)
    if command == "schur":
        if "rows" in rep:
            return "\n".join(f"{r['group']} | {r['parabolic']} | {r['notation']}" for r in rep["rows"])
        return rep["notation"]
    if command == "qindex":
        return "\n".join(f"{q['stratum']:3d}  {q['name']:<12} {q['notation']}" for q in rep["q_indices"])
    if command == "finite-dim":
        return "true" if rep["finite_dimensional"] else "false"
    if command == "support":
        lines = []
        for route, res in rep.items():
            lines.append(f"[{route}] finite dimensional: {str(res['finite_dimensional']).lower()}")
            for st in res["strata"]:
                tag = st.get("status") or ("in support" if st["in_support"] else "excluded")
                lines.append(f"  {st['stratum']:3d}  {st['name']:<12} {tag}")
        return "\n".join(lines)
    if command == "wexp" and "denominators" in rep:
        lines = [f"degree {d + 1}: " + " ".join(fs) for d, fs in enumerate(rep["denominators"])]
        lines.append(f"singular hyperplanes up to degree {rep['up_to_degree']}:")
        lines.extend(f"  {h['condition']}" for h in rep["singular_hyperplanes"])
        return "\n".join(lines)
    return json.dumps(_jsonable(rep), indent=1, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cherednik", description="Supports of spherical Cherednik modules via Schur elements and W-exponentials.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--group", default=None, help="name (h3, f4, a3, b2, i2(5)), grpn:r,p,n, cyclic:n, inline JSON or @file")
        sp.add_argument("--c", default=None, help="a rational for every coordinate, or JSON like '{\"x.1\": \"1/2\"}'")
        sp.add_argument("--gr1n", default=None, help="JSON like '{\"c0\": \"1/3\", \"d\": [0, 0]}'")
        sp.add_argument("--lambda", dest="lam", default=None, help="covector entries, comma separated")
        sp.add_argument("--degree", type=int, default=8)
        sp.add_argument("--unity-bound", type=int, default=60)
        sp.add_argument("--schur-table", default=None, help="table file (default: the shipped one)")
        sp.add_argument("--table-group", default=None)
        sp.add_argument("--route", choices=["schur", "exponential", "both"], default="schur")
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.degree < 1 or args.unity_bound < 1:
            raise InputError("bounds must be positive")
        if args.group is None and not (args.command == "schur" and (args.schur_table or args.table_group)):
            raise InputError("--group is required")
        rep = COMMANDS[args.command](args)
    except (ValueError, GroupTooLarge, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Undecidable as exc:
        print(str(exc) if str(exc).startswith("undecidable") else f"undecidable: {exc}", file=sys.stderr)
        return EXIT_UNDECIDABLE
    except (ArithmeticError, CharacterError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.format == "json":
        print(json.dumps(_jsonable(rep), indent=1, sort_keys=True))
    else:
        print(_text(args.command, rep))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
