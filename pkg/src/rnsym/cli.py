"""Command-line front end: ``rnsym {verify,cohomology,bracket,lift} problem.json``.

Exit codes: 0 when every reported check passes, 1 when a check fails,
2 for unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources

import jsonschema

from . import bundle as bun
from . import derived, lie, lifts
from .cohomology import AlgebraComplex, betti, sym_cohomology
from .derivation import apply, is_homological
from .errors import (DecodeError, DegreeError, JacobiError, MembershipError,
                     NotHomomorphismError, RnSymError)
from .expr import parse_element, parse_vector_field
from .models import builtin, explicit

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_CAP = 2
DEFAULT_TOP = 6


class InputError(Exception):
    pass


@dataclass
class Check:
    name: str
    ok: bool
    witness: str | None = None


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    result: dict = field(default_factory=dict)
    truncated: bool = False
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, witness=None) -> bool:
        self.checks.append(Check(name, bool(ok), None if witness is None else str(witness)))
        return ok

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["command"], [Check(**c) for c in d["checks"]], d.get("result", {}),
                   d.get("truncated", False), d.get("notes", []))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f": {c.witness}" if c.witness else ""))
        for k, v in self.result.items():
            lines.append(f"  {k}: {v}")
        if self.truncated:
            lines.append("  warning: truncation reached; values are valid below the cap")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


# problem loading

def load_schema() -> dict:
    return json.loads(resources.files("rnsym").joinpath("problem_schema.json").read_text())


def load_problem(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "(root)"
        raise InputError(f"{path}: schema violation at {where}: {exc.message}") from None
    return data


class Problem:
    """Lazily built objects of a problem description."""

    def __init__(self, data: dict, cap: int | None = None):
        self.data = data
        self.caps = data.get("caps", {})
        self.cap = cap if cap is not None else self.caps.get("coeff")
        self.notes: list = []
        self.model = self._model()
        if self.model.algebra.coords and self.cap is None:
            self.cap = DEFAULT_CAP
            self.notes.append(f"coefficient cap defaulted to {DEFAULT_CAP}")
        self._g = self._act = None

    def _model(self):
        entry = self.data["model"]
        if "builtin" in entry:
            kwargs = {"cap": entry["cap"]} if "cap" in entry and entry["builtin"] == "affine" else {}
            try:
                return builtin(entry["builtin"], *entry.get("params", []), **kwargs)
            except TypeError:
                raise InputError(f"wrong parameters for model {entry['builtin']!r}") from None
        ex = entry["explicit"]

        def parser(text, where):
            return lambda alg: parse_element(text, alg, path=where)

        diff = {k: parser(v, f"model.differential.{k}") for k, v in ex.get("differential", {}).items()}
        fields = {f: {g: parser(v, f"model.fields.{f}.{g}") for g, v in vals.items()}
                  for f, vals in ex.get("fields", {}).items()}
        return explicit(ex.get("name", "explicit"), [tuple(g) for g in ex["generators"]],
                        ex.get("coords", []), diff, fields, entry.get("cap"))

    def element(self, text: str, where: str):
        return parse_element(text, self.model.algebra, self.model.d, where)

    @property
    def g(self) -> lie.LieAlgebra:
        if self._g is None:
            entry = self.data.get("lie_algebra", {"dim": 0})
            names = entry.get("names") or entry.get("dim", 0)
            consts = [(a, b, c, Fraction(str(v))) for a, b, c, v in entry.get("constants", [])]
            self._g = lie.LieAlgebra(names, consts)
        return self._g

    def per_basis(self, key: str) -> list:
        raw = self.data.get(key)
        names = self.g.names
        if raw is None:
            return [None] * len(names)
        if isinstance(raw, list):
            if len(raw) != len(names):
                raise InputError(f"{key}: expected {len(names)} entries, got {len(raw)}")
            return raw
        unknown = set(raw) - set(names)
        if unknown:
            raise InputError(f"{key}: unknown basis names {sorted(unknown)}")
        return [raw.get(n) for n in names]

    @property
    def act(self) -> lie.LieAction:
        if self._act is None:
            texts = self.per_basis("action")
            fields = [self.model.vf() if t is None else
                      parse_vector_field(t, self.model, f"action.{n}")
                      for t, n in zip(texts, self.g.names)]
            self._act = lie.LieAction(self.g, self.model, fields)
        return self._act

    def bundle_data(self):
        entry = self.data.get("bundle")
        if entry is None:
            raise InputError("this command needs a 'bundle' entry")
        H = self.element(entry["H"], "bundle.H") if "H" in entry else self.model.algebra.zero()
        return entry["n"], H

    @property
    def P(self) -> bun.RnBundle:
        n, H = self.bundle_data()
        return bun.RnBundle(self.model, n, H)

    def alpha(self, P) -> lifts.AlphaAssignment:
        texts = self.per_basis("alpha")
        forms = [P.model.algebra.zero() if t is None else self.element(t, f"alpha.{n}")
                 for t, n in zip(texts, self.g.names)]
        return lifts.AlphaAssignment(self.act, P, forms)

    def sym_elements(self, P) -> list:
        out = []
        for i, entry in enumerate(self.data.get("elements", [])):
            where = f"elements.{i}"
            if "ham" in entry:
                out.append(derived.ham_element(P, self.element(entry["ham"], where + ".ham")))
                continue
            X = parse_vector_field(entry["X"], self.model, where + ".X") if "X" in entry else None
            form = self.element(entry["form"], where + ".form") if "form" in entry else None
            out.append(bun.SymElement(P, entry["degree"], X, form))
        return out

    def brst_element(self, cx, key: str):
        text = self.data.get(key)
        if text is None:
            return None
        d = self.model.d.extend_to(cx.algebra)
        return parse_element(text, cx.algebra, d, key)


# commands

def cmd_verify(pb: Problem, args) -> Report:
    rep = Report("verify", notes=pb.notes)
    ok, wit = is_homological(pb.model.d)
    rep.add("model differential squares to zero", ok, None if ok else f"d^2({wit[0]}) = {wit[1]}")
    if "lie_algebra" in pb.data:
        try:
            pb.g
            rep.add("Jacobi identity", True)
        except JacobiError as exc:
            rep.add("Jacobi identity", False, f"quadruple {exc.quadruple}")
            return rep
        if "action" in pb.data:
            try:
                pb.act
                rep.add("action is a Lie algebra homomorphism", True)
            except NotHomomorphismError as exc:
                rep.add("action is a Lie algebra homomorphism", False, str(exc))
    if "bundle" in pb.data:
        n, H = pb.bundle_data()
        deg_ok = H.is_zero() or H.degree == n + 1
        rep.add(f"H has degree n+1 = {n + 1}", deg_ok, None if deg_ok else f"degree {H.degree}")
        dH = apply(pb.model.d, H)
        if not dH.is_zero():
            rep.add("Q = d + H Dt is homological", False, f"Q not homological, dH = {dH}")
        elif deg_ok:
            ok, wit = is_homological(bun.RnBundle(pb.model, n, H).Q)
            rep.add("Q = d + H Dt is homological", ok, None if ok else f"Q^2({wit[0]}) = {wit[1]}")
    return rep


def _table(cx: AlgebraComplex, top: int, rep: Report) -> dict:
    out = {}
    for k in range(top + 1):
        r = betti(cx, k)
        out[k] = r.value
        rep.truncated |= r.truncated
        if r.note and r.note not in rep.notes:
            rep.notes.append(r.note)
    return out


def cmd_cohomology(pb: Problem, args) -> Report:
    rep = Report(f"cohomology {args.which}", notes=pb.notes)
    top = args.top if args.top is not None else pb.caps.get("top", DEFAULT_TOP)
    if args.which == "sym":
        res = sym_cohomology(pb.P, pb.cap)
        rep.result["degrees"] = res["degrees"]
        rep.result["direct"] = list(res["direct"])
        rep.result["formula"] = list(res["formula"])
        rep.add("direct ranks equal the closed formula", res["agree"],
                None if res["agree"] else f"direct {list(res['direct'])} vs formula {list(res['formula'])}")
        if pb.model.algebra.coords:
            rep.notes.append(f"coefficient degree capped at {pb.cap}")
        return rep
    if args.which == "deRham":
        cx = AlgebraComplex(pb.model.algebra, pb.model.d, pb.cap)
    else:
        builders = {"weil": lambda: lie.weil_differential(pb.g),
                    "ce": lambda: lie.ce_differential(pb.g, pb.act if "action" in pb.data else None),
                    "brst": lambda: lie.brst_differential(pb.g, pb.act)}
        ecx = builders[args.which]()
        cx = AlgebraComplex(ecx.algebra, ecx.differential, pb.cap if ecx.algebra.coords else None)
    table = _table(cx, top, rep)
    rep.result["betti"] = [table[k] for k in range(top + 1)]
    return rep


def cmd_bracket(pb: Problem, args) -> Report:
    rep = Report(f"bracket {args.kind}", notes=pb.notes)
    P = pb.P
    try:
        elems = pb.sym_elements(P)
    except MembershipError as exc:
        rep.add("elements are Hamiltonian", False, str(exc))
        return rep
    if args.kind == "rogers":
        forms = [e.form for e in elems]
        rep.result["value"] = str(derived.rogers_bracket(P, forms))
        return rep
    if len(elems) < 2:
        raise InputError("need at least two entries in 'elements'")
    i, j = args.pair
    if not (0 <= i < len(elems) and 0 <= j < len(elems)):
        raise InputError(f"--pair {i} {j} is out of range for {len(elems)} elements")
    a, b = elems[i], elems[j]
    if args.kind == "sym":
        value = bun.sym_bracket(a, b)
    elif args.kind == "bracket_H":
        value = bun.bracket_H(a, b)
    elif args.kind == "ham":
        try:
            value = derived.ham_bracket(a, b)
        except MembershipError as exc:
            rep.add("inputs are Hamiltonian symmetries", False, str(exc))
            return rep
    else:
        closed = a.degree < 0 and b.degree < 0
        value = derived.derived_bracket(a, b) if closed else derived.derived_bracket_general(a, b)
        try:
            literal = bun.decode(derived.literal_derived_bracket(a, b), P)
            rep.add("agrees with the literal [[Q,a],b]", literal == value,
                    None if literal == value else str(literal))
        except DecodeError as exc:
            rep.notes.append(f"literal comparison skipped: {exc}")
    rep.result["value"] = str(value)
    rep.result["degree"] = value.degree
    return rep


def _residual_text(res: dict) -> str | None:
    parts = []
    for family, items in res.items():
        for key, v in items:
            parts.append(f"{family}{key}: {v}")
    return "; ".join(parts) or None


def _matrix_text(m):
    return [[str(v) for v in row] for row in m]


def cmd_lift(pb: Problem, args) -> Report:
    rep = Report(f"lift {args.mode}", notes=pb.notes)
    P = pb.P
    mode = args.mode
    if mode in ("strict", "leibniz", "cartan"):
        A = pb.alpha(P)
        if mode == "strict":
            r = lifts.check_strict(A)
            rep.add("strict lift equations", r.ok, _residual_text(r.residuals))
        elif mode == "leibniz":
            r = lifts.check_leibniz(A)
            rep.add("Leibniz lift equations with constant c", r.ok, _residual_text(r.residuals))
            rep.result["c"] = _matrix_text(r.constants)
        c = lifts.cartan_equivalence(A)
        rep.result["cartan_W"] = str(c.detail["W"])
        rep.result["cartan_dW"] = str(c.detail["dW"])
        rep.result["cartan_invariant"] = c.detail["invariant"]
        rep.result["cartan_strict"] = c.detail["strict"]
        rep.result["cartan_leibniz"] = c.detail["leibniz"]
        if mode == "cartan":
            rep.add("W is invariant", c.detail["invariant"], _residual_text(c.residuals))
            rep.add("d_C W = 0 or 1/2 c Omega Omega with constant c", c.ok, str(c.detail["dW"]))
        else:
            agree = c.detail[mode] == r.ok
            rep.add("Cartan model verdict agrees", agree)
        return rep
    if mode == "sigma":
        S = _ladder(pb, P)
        r = lifts.check_sigma_ladder(S)
        rep.add("sigma ladder equations", r.ok,
                _residual_text({f"rung {k}" if k != "closed" else k: v for k, v in r.residuals.items()}))
        return rep
    cx = lifts.brst_complex(pb.act)
    W = pb.brst_element(cx, "brst")
    if W is None:
        W = lifts.cartan_element(pb.alpha(P), cx)
    if mode == "brst":
        r = lifts.check_brst_lift(W, pb.act, P, cx)
        rep.add("delta_BRST W = 0 with form part H", r.ok, _residual_text(r.residuals))
        rep.result["W"] = str(W)
        rep.result["ce_shadow"] = str(r.detail["shadow"])
        rep.result["ce_shadow_closed"] = r.detail["shadow_closed"]
        return rep
    W2 = pb.brst_element(cx, "brst2")
    if W2 is None:
        raise InputError("equivalence mode needs 'brst2'")
    try:
        ok, prim = lifts.equivalence_of_lifts(W, W2, pb.act, P, pb.cap, cx)
    except DegreeError as exc:
        rep.add("both lifts are BRST-closed", False, str(exc))
        return rep
    rep.add("W1 - W2 is BRST-exact", ok, None)
    if ok:
        rep.result["primitive"] = str(prim)
    if cx.algebra.coords:
        rep.notes.append(f"exactness decided with coefficient degree capped at {pb.cap}")
    return rep


def _ladder(pb: Problem, P) -> lifts.SigmaLadder:
    raw = pb.data.get("sigma")
    if raw is None:
        return lifts.induced_ladder(pb.alpha(P))
    names = pb.g.names
    rungs = {}
    for j, table in raw.items():
        rung = {}
        for key, text in table.items():
            args = []
            for part in key.split(","):
                part = part.strip()
                if part not in names:
                    raise InputError(f"sigma.{j}: unknown basis name {part!r}")
                args.append(names.index(part))
            rung[tuple(args)] = pb.element(text, f"sigma.{j}.{key}")
        rungs[int(j)] = rung
    return lifts.SigmaLadder(pb.act, P, rungs)


COMMANDS = {"verify": cmd_verify, "cohomology": cmd_cohomology,
            "bracket": cmd_bracket, "lift": cmd_lift}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem description (JSON)")
    common.add_argument("--caps", type=int, metavar="K", help="coefficient degree cap for affine models")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--quiet", action="store_true", help="print only the verdict line")
    p = argparse.ArgumentParser(prog="rnsym", description="Symmetries of R[n]-bundles over cdga models.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="structural checks")
    c = sub.add_parser("cohomology", parents=[common], help="cohomology tables")
    c.add_argument("--which", choices=["deRham", "sym", "weil", "brst", "ce"], default="deRham")
    c.add_argument("--top", type=int, help="highest degree to report")
    b = sub.add_parser("bracket", parents=[common], help="evaluate a bracket of two elements")
    b.add_argument("--kind", choices=["sym", "derived", "ham", "bracket_H", "rogers"], default="derived")
    b.add_argument("--pair", type=int, nargs=2, default=[0, 1], metavar=("I", "J"),
                   help="indices into 'elements'")
    lf = sub.add_parser("lift", parents=[common], help="certify a lift of an action")
    lf.add_argument("--mode", choices=["strict", "leibniz", "cartan", "sigma", "brst", "equivalence"],
                    default="strict")
    return p


def run(argv=None) -> tuple[int, str]:
    """Execute a command and return (exit code, output text)."""
    args = build_parser().parse_args(argv)
    try:
        pb = Problem(load_problem(args.problem), args.caps)
        rep = COMMANDS[args.command](pb, args)
    except (InputError, RnSymError, ValueError) as exc:
        # includes bundles with non-closed H outside `verify`
        return EXIT_INPUT, f"error: {exc}"
    if args.json:
        text = rep.to_json()
    elif args.quiet:
        text = f"{rep.command}: {'PASS' if rep.ok else 'FAIL'}"
    else:
        text = rep.render()
    return (EXIT_PASS if rep.ok else EXIT_FAIL), text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
