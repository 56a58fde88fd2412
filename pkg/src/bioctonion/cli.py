"""Command-line front end. Every verb reads JSON (a file path or inline text via
--in), writes a JSON or text report, and maps errors to exit codes:
1 invalid input, 2 invariant violation, 3 undecided verdict."""
import json
import os
import random
import sys
import time

import click

from . import acceptance
from . import cohomology as coh
from . import invariants as inv
from . import tkk
from .algebras import build_product, check_algebra, decompose, descriptor_from_json
from .errors import InputError, InvariantViolation
from .fields import field_from_json, parse_field_flag
from .qforms import form_from_json, similar, witt_decompose

EXIT_INPUT, EXIT_VIOLATION, EXIT_UNDECIDED = 1, 2, 3


class Undecided(Exception):
    def __init__(self, report):
        super().__init__("undecided verdict")
        self.report = report


def _load(text):
    if text is None:
        raise InputError("--in is required")
    if not text.lstrip().startswith(("{", "[")) and os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"bad JSON: {e}") from e


def _items(obj):
    """A list input is a batch; the report array follows input order."""
    return obj if isinstance(obj, list) else [obj]


def _field(flag):
    return parse_field_flag(flag) if flag else None


def _desc(obj, F):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("expected a descriptor object with a 'kind'")
    F = F or _field_of(obj)
    return descriptor_from_json(obj, F)


def _form(obj, F):
    if isinstance(obj, list):
        obj = {"entries": obj}
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError("expected a form object with 'entries'")
    if F is None and "field" not in obj:
        raise InputError("form needs a field (in the JSON or via --field)")
    F = F or _field_of(obj)
    return form_from_json(obj, F)


def _pair(obj):
    if isinstance(obj, dict) and "a" in obj and "b" in obj:
        return obj["a"], obj["b"]
    if isinstance(obj, list) and len(obj) == 2:
        return obj[0], obj[1]
    raise InputError("expected a pair {'a': ..., 'b': ...} or a two-element list")


# ---------------------------------------------------------------- verbs

def _algebra_build(obj, F, opts):
    desc = _desc(obj, F)
    A = build_product(desc)
    check_algebra(A)
    out = A.to_json()
    out["descriptor"] = desc.to_json()
    return out


def _algebra_invariants(obj, F, opts):
    return inv.report(_desc(obj, F))


def _algebra_division(obj, F, opts):
    if isinstance(obj, dict) and "kind" in obj:
        verdict = inv.is_division(_desc(obj, F))
    else:
        center = obj.get("center_d") if isinstance(obj, dict) else None
        Q = _form(obj, F)
        verdict = inv.is_division(Q, None if center is None else Q.field.parse(str(center)))
    return verdict.to_json()


def _algebra_isotopic(obj, F, opts):
    a, b = _pair(obj)
    d1, d2 = _desc(a, F), _desc(b, F)
    v = inv.is_isotopic(d1, d2)
    out = v.to_json(d1.field)
    if v == "Undecided":
        raise Undecided(out)
    return out


def _algebra_decompose(obj, F, opts):
    desc = _desc(obj, F)
    A = build_product(desc)
    k = A.field
    D = decompose(A)
    if D.kind == "factors":
        return {"kind": "decomposable", "dims": [C.dim for C in D.factors],
                "norms": [n.to_json()["entries"] for n in D.norms]}
    E = D.E
    return {"kind": "corestriction", "d": k.fmt(D.d), "dim": len(D.table),
            "norm_entries": [E.fmt(x) for x in D.norm_entries]}


def _form_witt(obj, F, opts):
    return witt_decompose(_form(obj, F)).to_json()


def _form_en(obj, F, opts):
    if opts["n"] is None:
        raise InputError("form-en needs --n")
    return coh.to_json(coh.e_n(opts["n"], _form(obj, F)))


def _form_similar(obj, F, opts):
    a, b = _pair(obj)
    q1, q2 = _form(a, F), _form(b, F)
    s = similar(q1, q2)
    out = s.to_json(q1.field)
    if s.status == "Undecided":
        raise Undecided(out)
    return out


def _tkk_profile(obj, F, opts):
    A = build_product(_desc(obj, F))
    return tkk.graded_profile(A, random.Random(opts["seed"])).to_json()


def _field_of(obj):
    v = obj.get("field", "Q")
    return parse_field_flag(v) if isinstance(v, str) else field_from_json(v)


def _scalar(F, x):
    if isinstance(x, list):
        return [F.parse(str(a)) for a in x]
    return F.parse(str(x))


def _rost_construct(obj, F, opts):
    if not isinstance(obj, dict):
        raise InputError("expected a construction object")
    F = F or _field_of(obj)
    spec = {k: v for k, v in obj.items() if k != "field"}
    for key in ("c", "d", "delta"):
        if key in spec:
            spec[key] = _scalar(F, spec[key])
    for key in ("phi", "phi1", "phi2"):
        if key in spec:
            spec[key] = [_scalar(F, x) for x in spec[key]]
    Q, desc = inv.rost_construct(spec, F)
    return {"form": Q.to_json(), "descriptor": desc.to_json()}


VERBS = {
    "algebra-build": _algebra_build,
    "algebra-invariants": _algebra_invariants,
    "algebra-division": _algebra_division,
    "algebra-isotopic": _algebra_isotopic,
    "algebra-decompose": _algebra_decompose,
    "form-witt": _form_witt,
    "form-en": _form_en,
    "form-similar": _form_similar,
    "tkk-profile": _tkk_profile,
    "rost-construct": _rost_construct,
}


# ---------------------------------------------------------------- output

def _text(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- item {i}\n{_text(x, indent + 1)}" for i, x in enumerate(obj))
    return f"{pad}{obj}"


def _emit(report, fmt, out):
    text = json.dumps(report, indent=2, sort_keys=True) if fmt == "json" else _text(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _is_batch(verb, data):
    if not isinstance(data, list) or not data:
        return False
    if verb in ("algebra-isotopic", "form-similar"):
        return all(isinstance(x, dict) and "a" in x for x in data)
    return all(isinstance(x, dict) for x in data)


def _run_verb(verb, opts):
    F = _field(opts["field"])
    data = _load(opts["inp"])
    fn = VERBS[verb]
    batch = _is_batch(verb, data)
    items = _items(data) if batch else [data]
    reports, undecided = [], False
    for obj in items:
        try:
            reports.append(fn(obj, F, opts))
        except Undecided as u:
            if not opts["allow_undecided"]:
                undecided = True
            reports.append(u.report)
    _emit(reports if batch else reports[0], opts["fmt"], opts["out"])
    return EXIT_UNDECIDED if undecided else 0


_common = [
    click.option("--field", default=None, help="Ground field, e.g. Q, F5, Q((t1..t4)) or JSON."),
    click.option("--in", "inp", default=None, help="Input JSON file or inline JSON."),
    click.option("--out", default=None, help="Write the report here instead of stdout."),
    click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json"),
    click.option("--seed", default=0, type=int, show_default=True),
    click.option("--trials", default=None, type=int, help="Override sampled trial counts."),
    click.option("--allow-undecided", is_flag=True, help="Exit 0 on an Undecided verdict."),
]


def _with_common(f):
    for opt in reversed(_common):
        f = opt(f)
    return f


def _guard(fn, *args):
    try:
        return fn(*args)
    except InvariantViolation as e:
        click.echo(f"invariant violation: {e}", err=True)
        return EXIT_VIOLATION
    except (InputError, KeyError, TypeError, ValueError) as e:
        click.echo(f"invalid input: {e}", err=True)
        return EXIT_INPUT


@click.group()
def main():
    """Exact computations with bi-octonion algebras and their invariants."""


def _make(verb):
    @_with_common
    @click.option("--n", "n", default=None, type=int, help="Degree for form-en.")
    def cmd(**opts):
        sys.exit(_guard(_run_verb, verb, opts))
    cmd.__doc__ = f"Run {verb} on the JSON given by --in."
    return cmd


for _verb in VERBS:
    main.command(name=_verb)(_make(_verb))


@main.command()
@_with_common
@click.option("--only", default=None, help="Comma-separated criterion numbers.")
def selftest(field, inp, out, fmt, seed, trials, allow_undecided, only):
    """Run the acceptance suite and report pass/fail per criterion."""
    which = [int(x) for x in only.split(",")] if only else None
    t0 = time.perf_counter()

    def progress(r):
        if fmt == "text" and not out:
            click.echo(r.line())
        click.echo(f"criterion {r.number} took {r.seconds:.1f}s", err=True)

    def body():
        results = acceptance.run(seed=seed, trials=trials, which=which, on_result=progress)
        npass = sum(r.passed for r in results)
        report = {"seed": seed, "passed": npass, "failed": len(results) - npass,
                  "criteria": [r.to_json() for r in results]}
        if fmt == "json" or out:
            _emit(report, fmt, out) if fmt == "json" else _emit(
                "\n".join(r.line() for r in results), fmt, out)
        else:
            click.echo(f"{npass}/{len(results)} criteria passed")
        click.echo(f"selftest wall clock {time.perf_counter() - t0:.1f}s", err=True)
        return 0 if npass == len(results) else EXIT_VIOLATION

    sys.exit(_guard(body))


if __name__ == "__main__":
    main()
