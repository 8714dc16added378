"""Command line front end.

Every subcommand builds a :class:`Report` of named checks. The exit code is 0
when no check failed, 1 when one did and 2 on input or evaluation errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import (LEFT, RIGHT, Algebra, BlockData, Element, augmented_homotope, homotope,
                      is_associative, is_well_tempered_criterion, parse_element,
                      principal_two_sided_ideal)
from .errors import AlgebraError
from .linalg import QQ, FieldSpec, Matrix, Mod

STATUSES = ("pass", "fail", "error", "inconclusive")


# ---------------------------------------------------------------------------
# reports

@dataclass
class CheckRecord:
    name: str
    status: str
    data: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError("unknown status %r" % (self.status,))


@dataclass
class Report:
    command: str
    input_digest: str = ""
    seed: object = None
    version: str = __version__
    checks: list = dc_field(default_factory=list)

    def add(self, name: str, status, **data) -> CheckRecord:
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        rec = CheckRecord(name, status, _jsonable(data))
        self.checks.append(rec)
        return rec

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return 1
        if "error" in statuses:
            return 2
        return 0

    def to_dict(self) -> dict:
        return {"version": self.version, "command": self.command, "input_digest": self.input_digest,
                "seed": self.seed, "checks": [asdict(c) for c in self.checks]}

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["command"], d.get("input_digest", ""), d.get("seed"), d.get("version", __version__),
                   [CheckRecord(c["name"], c["status"], c.get("data", {})) for c in d.get("checks", [])])


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (Fraction, Mod)):
        return str(x)
    if isinstance(x, Element):
        return [str(c) for c in x.coords]
    if isinstance(x, Matrix):
        return [[str(c) for c in r] for r in x.rows]
    return x


def emit_report(r: Report, fmt: str = "human") -> str:
    if fmt == "structured":
        return json.dumps(r.to_dict(), indent=2) + "\n"
    lines = ["%s %s  command=%s digest=%s%s" % ("homotopes", r.version, r.command, r.input_digest[:16],
                                                 "" if r.seed is None else " seed=%s" % r.seed)]
    for c in r.checks:
        data = ", ".join("%s=%s" % (k, json.dumps(v)) for k, v in c.data.items())
        lines.append("[%s] %s%s" % (c.status.upper(), c.name, ("  " + data) if data else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# input files

class InputError(ValueError):
    pass


def _field_of(doc, override: FieldSpec | None) -> FieldSpec:
    if override is not None:
        return override
    f = doc.get("field", "rationals")
    try:
        if f == "rationals":
            return QQ
        if isinstance(f, dict) and "prime" in f:
            return FieldSpec(int(f["prime"]))
        if isinstance(f, str):
            return FieldSpec.from_string(f)
    except (TypeError, ValueError) as e:
        raise InputError("field: %s" % e) from None
    raise InputError("field: expected 'rationals' or {'prime': p}, got %r" % (f,))


def _scalar(F: FieldSpec, text, where: str):
    try:
        return F.parse(str(text))
    except (ValueError, ZeroDivisionError) as e:
        raise InputError("%s: malformed scalar %r (%s)" % (where, text, e)) from None


def parse_algebra_doc(doc: dict, field: FieldSpec | None = None) -> Algebra:
    F = _field_of(doc, field)
    try:
        d = int(doc["dim"])
    except (KeyError, TypeError, ValueError):
        raise InputError("dim: missing or not an integer") from None
    labels = doc.get("labels")
    sc = []
    for k, entry in enumerate(doc.get("structure_constants", [])):
        where = "structure_constants[%d]" % k
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise InputError("%s: expected [i, j, l, scalar]" % where)
        i, j, l, c = entry
        for name, idx in (("i", i), ("j", j), ("l", l)):
            if not isinstance(idx, int) or not 0 <= idx < d:
                raise InputError("%s: index %s=%r out of range [0, %d)" % (where, name, idx, d))
        sc.append((i, j, l, _scalar(F, c, where)))
    try:
        A = Algebra(F, d, sc, labels=labels)
    except AlgebraError as e:
        raise InputError(str(e)) from None
    if doc.get("unit") is not None:
        u = [_scalar(F, c, "unit[%d]" % k) for k, c in enumerate(doc["unit"])]
        if len(u) != d:
            raise InputError("unit: expected %d coordinates" % d)
        try:
            A = Algebra(F, d, sc, labels=labels, unit=u)
        except AlgebraError as e:
            raise InputError("unit: %s" % e) from None
    if doc.get("matrix_units") is not None:
        mu = []
        for b, blk in enumerate(doc["matrix_units"]):
            try:
                mu.append([[parse_element(A, str(x)) for x in row] for row in blk])
            except ValueError as e:
                raise InputError("matrix_units[%d]: %s" % (b, e)) from None
        idems = [sum((E[j][j] for j in range(len(E))), A.zero()) for E in mu]
        A.blocks = BlockData(idems, [len(E) for E in mu], mu)
    if A.name is None:
        A.name = doc.get("name")
    return A


def read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e)) from None


def parse_algebra_file(path_or_text: str, field: FieldSpec | None = None) -> Algebra:
    """Read an algebra from a path, or from JSON text when the argument starts with ``{``."""
    text = path_or_text if path_or_text.lstrip().startswith("{") else read_text(path_or_text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON: %s" % e) from None
    return parse_algebra_doc(doc, field)


def parse_module_file(path_or_text: str, field: FieldSpec | None = None, algebra: Algebra | None = None):
    from .modules import ModuleRep
    text = path_or_text if path_or_text.lstrip().startswith("{") else read_text(path_or_text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON: %s" % e) from None
    if algebra is None:
        src = doc.get("algebra")
        if isinstance(src, dict):
            algebra = parse_algebra_doc(src, field)
        elif isinstance(src, str):
            base = Path(path_or_text).parent if not path_or_text.lstrip().startswith("{") else Path(".")
            algebra = parse_algebra_file(str(base / src), field)
        else:
            raise InputError("algebra: expected an inline document or a file name")
    side = doc.get("side", "left")
    if side not in (LEFT, RIGHT):
        raise InputError("side: expected 'left' or 'right'")
    n = int(doc["dim"])
    action = doc.get("action", [])
    if len(action) != algebra.dim:
        raise InputError("action: expected %d matrices, got %d" % (algebra.dim, len(action)))
    mats = []
    for b, M in enumerate(action):
        if len(M) != n or any(len(r) != n for r in M):
            raise InputError("action[%d]: expected a %dx%d matrix" % (b, n, n))
        mats.append(Matrix._raw([[_scalar(algebra.field, x, "action[%d]" % b) for x in r] for r in M],
                                algebra.field, n))
    try:
        return ModuleRep(algebra, side, n, mats, {"name": doc.get("name", "module")})
    except (AlgebraError, ValueError) as e:
        raise InputError("module: %s" % e) from None


def algebra_to_doc(A: Algebra) -> dict:
    F = A.field
    doc = {"field": "rationals" if F.p is None else {"prime": F.p}, "dim": A.dim, "labels": list(A.labels),
           "structure_constants": [[i, j, l, F.format(c)] for i, j, l, c in A.structure_constants()]}
    if A.unit is not None:
        doc["unit"] = [F.format(c) for c in A.unit.coords]
    if A.blocks is not None and A.blocks.matrix_units is not None:
        doc["matrix_units"] = [[[repr(x) for x in row] for row in E] for E in A.blocks.matrix_units]
    return doc


def digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\0")
    return h.hexdigest()


# ---------------------------------------------------------------------------
# subcommands

def _load(args) -> tuple[Algebra, str]:
    text = read_text(args.algebra)
    return parse_algebra_file(text, args.field), digest(text, getattr(args, "delta", "") or "")


def _delta(A: Algebra, args) -> Element:
    if not args.delta:
        raise InputError("--delta is required")
    try:
        return parse_element(A, args.delta)
    except ValueError as e:
        raise InputError("--delta: %s" % e) from None


def cmd_check(args, rep: Report):
    A, rep.input_digest = _load(args)
    from .algebra import associator_failure, find_unit
    assoc = is_associative(A)
    rep.add("associative", "pass", value=assoc, witness=associator_failure(A) if not assoc else None)
    u = find_unit(A)
    rep.add("unit", "pass", value=u is not None, unit=u)
    if A.unit is not None:
        rep.add("declared_unit", u is not None and u == A.unit, unit=A.unit)


def cmd_radical(args, rep: Report):
    from .structure import jacobson_radical
    A, rep.input_digest = _load(args)
    R = jacobson_radical(A)
    rep.add("radical", "pass", dim=len(R), basis=[x for x in R])


def cmd_blocks(args, rep: Report):
    from .structure import quotient_blocks
    A, rep.input_digest = _load(args)
    S, _, bd = quotient_blocks(A)
    rep.add("blocks", "pass", semisimple_dim=S.dim, block_sizes=bd.block_sizes,
            idempotents=[c for c in bd.idempotents])


def cmd_homotope(args, rep: Report):
    A, rep.input_digest = _load(args)
    delta = _delta(A, args)
    H = augmented_homotope(A, delta) if args.augmented else homotope(A, delta, args.side)
    rep.add("homotope", "pass", augmented=args.augmented, algebra=algebra_to_doc(H),
            associative=is_associative(H))


def cmd_well_tempered(args, rep: Report):
    from .modules import augmentation_modules, ext1_trivial, is_projective
    A, rep.input_digest = _load(args)
    delta = _delta(A, args)
    crit = is_well_tempered_criterion(A, delta)
    ideal = principal_two_sided_ideal(A, delta)
    rep.add("criterion", "pass", value=crit, ideal_dim=len(ideal), dim=A.dim)
    mods = augmentation_modules(A, delta)
    pl, pr = is_projective(mods.B_plus_left), is_projective(mods.B_plus_right)
    rep.add("projective_B_plus", "pass", left=pl, right=pr)
    rep.add("methods_agree", (pl and pr) == crit)
    e = ext1_trivial(A, delta, mods)
    rep.add("ext1_trivial", (e == 0) == crit, value=e)


def cmd_normal_form(args, rep: Report):
    from .structure import suitable_form
    A, rep.input_digest = _load(args)
    delta = _delta(A, args)
    f = suitable_form(A, delta)
    rep.add("suitable_form", f.check(delta), s=f.s, r=f.r, u=f.u, v=f.v, ranks=f.ranks)


def cmd_rep_dims(args, rep: Report):
    from .structure import block_ranks, homotope_rep_dims, radical_compare
    A, rep.input_digest = _load(args)
    delta = _delta(A, args)
    dims = homotope_rep_dims(A, delta)
    ranks = block_ranks(A, delta)
    rc = radical_compare(A, delta)
    B_dim = A.dim + 1
    rep.add("rep_dims", "pass", value=dims, ranks=ranks)
    rep.add("dimension_identity", B_dim - rc.dims[1] == sum(r * r for r in dims),
            dim_B=B_dim, dim_RB=rc.dims[1])
    rep.add("radical_comparison", rc.consistent, contained=rc.contained, equal=rc.equal,
            delta_invertible=rc.delta_invertible)


def cmd_projective(args, rep: Report):
    from .modules import is_projective
    text = read_text(args.module)
    rep.input_digest = digest(text)
    M = parse_module_file(args.module, args.field)
    rep.add("projective", "pass", value=is_projective(M), dim=M.dim, side=M.side)


def cmd_recollement(args, rep: Report):
    from .experiments import recollement_samples
    from .modules import augmentation_modules, recollement_report
    A, rep.input_digest = _load(args)
    delta = _delta(A, args)
    rep.seed = args.seed
    mods = augmentation_modules(A, delta)
    a_s, b_s = recollement_samples(A, mods, random.Random("recollement-samples/%s" % (args.seed,)))
    for path in args.modules or []:
        M = parse_module_file(path, args.field, algebra=A)
        a_s.append(M)
    r = recollement_report(A, delta, a_s, b_s, mods)
    rep.add("well_tempered", "pass", value=r.well_tempered)
    for c in r.checks[1:]:
        status = "pass" if c.passed else ("fail" if r.well_tempered else "inconclusive")
        rep.add(c.name, status, **c.data)


def cmd_oracle(args, rep: Report):
    from .experiments import run_oracle
    rep.seed = args.seed
    rep.input_digest = digest("oracle", str(args.trials), str(args.seed), str(args.max_dim), str(args.field))
    trials = run_oracle(args.trials, args.seed, args.max_dim, args.field or QQ)
    agree = sum(t.agree for t in trials)
    ext = sum(t.ext_agree for t in trials)
    rep.add("projectivity_vs_criterion", agree == len(trials), agreements=agree, trials=len(trials),
            well_tempered=sum(t.criterion for t in trials))
    rep.add("ext1_vs_criterion", ext == len(trials), agreements=ext, trials=len(trials))
    for t in trials:
        if not (t.agree and t.ext_agree):
            rep.add("disagreement[%s]" % t.seed, "fail", profile=t.profile, delta=t.delta)


def cmd_nonassoc(args, rep: Report):
    from . import nonassoc as na
    rep.seed = args.seed
    F = args.field or FieldSpec(args.p)
    if args.action == "density":
        rep.input_digest = digest("density", str(args.d), str(F), str(args.samples), str(args.seed))
        r = na.genericity_density(args.d, F, args.samples, args.seed)
        rep.add("density", "pass", **asdict(r))
    elif args.action == "preimages":
        rep.input_digest = digest("preimages", str(args.d), str(F), str(args.seed))
        inst = na.generic_preimage_instance(args.d, F, args.seed)
        pre = na.homotope_preimages(inst.mp, inst.v)
        rep.add("preimages", len(pre) == 2 ** args.d, count=len(pre), expected=2 ** args.d,
                contains_source=any(na.same_tensor(m, inst.m) for m in pre))
    else:
        if not args.algebra:
            raise InputError("classify needs an algebra file")
        text = read_text(args.algebra)
        rep.input_digest = digest(text, str(args.samples), str(args.seed))
        m = parse_algebra_file(text, args.field)
        r = na.invertibility_class(m, args.samples, args.seed)
        rep.add("invertibility_class", "pass", value=r.cls, left_witness=r.left_witness,
                right_witness=r.right_witness, note=r.note)
        for side in (LEFT, RIGHT):
            s = na.simplicity_check(m, side)
            rep.add("simple_%s" % side, "pass" if s.status != "inconclusive" else "inconclusive",
                    value=s.status, envelope_dim=s.envelope_dim, witness=s.witness)


def cmd_fiber(args, rep: Report):
    from . import fiber as fb
    from .algebra import ideal_closure
    from .modules import cyclic_quotient, regular_module, trivial_module
    text = read_text(args.algebra)
    A = parse_algebra_file(text, args.field)
    rep.input_digest = digest(text, args.ideal, args.u or "")
    rep.seed = args.seed
    gens = [parse_element(A, g).coords for g in args.ideal.split(";") if g.strip()]
    I = ideal_closure(A, gens).basis()
    fp = fb.fiber_product(A, I)
    if args.action == "glue":
        kinds = {"regular": lambda: regular_module(fp.B), "trivial": lambda: trivial_module(fp.B)}
        L = kinds[args.module_kind]() if args.module_kind in kinds else \
            cyclic_quotient(fp.B, fp.from_ideal(parse_element(A, args.u or args.ideal.split(";")[0])))
        g = fb.glue(fp, L)
        rep.add("glue", fb.validate_triple(fp, g.triple)["valid"], n=g.triple.n, dim_M=g.triple.Mp.dim,
                dim_L=L.dim)
    elif args.action == "unglue":
        rng = random.Random("unglue/%s" % (args.seed,))
        T = _random_free_triple(fp, args.rank, rng)
        res = fb.psi_psiprime_is_identity(fp, T)
        rep.add("psi_psiprime_identity", res["identity"], **res)
    else:
        u = parse_element(A, args.u or args.ideal.split(";")[0])
        V = cyclic_quotient(fp.B, fp.from_ideal(u))
        K = fb.unit_kernel(fp, V)
        expected = fp.C.dim - 1
        au, bu = fb.annihilator_formula(fp, u)
        rep.add("unit_kernel", len(K) == expected, dim=len(K), expected=expected)
        rep.add("unit_kernel_Au_mod_Bu", len(K) == au - bu, dim_Au=au, dim_Bu=bu)


def _random_free_triple(fp, n: int, rng: random.Random):
    from . import fiber as fb
    return fb.free_triple(fp, n, fb.random_invertible_over(fp.C, n, rng))


# ---------------------------------------------------------------------------
# parser

def _field_arg(text: str) -> FieldSpec:
    try:
        return FieldSpec.from_string(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=None, help="rationals or fp:<p>")
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="homotopes", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def algebra_cmd(name, func, delta=False, help=None):
        s = sub.add_parser(name, parents=[common], help=help)
        s.add_argument("algebra", help="algebra file (JSON)")
        if delta:
            s.add_argument("--delta", required=True, help="coordinates '0,1,0,0', a label or 'e11 + e12'")
        s.set_defaults(func=func)
        return s

    algebra_cmd("check", cmd_check, help="associativity and unit")
    algebra_cmd("radical", cmd_radical, help="Jacobson radical")
    algebra_cmd("blocks", cmd_blocks, help="Wedderburn blocks of the semisimple quotient")
    s = algebra_cmd("homotope", cmd_homotope, True, help="homotope or augmented homotope")
    s.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    s.add_argument("--augmented", action="store_true")
    algebra_cmd("well-tempered", cmd_well_tempered, True, help="A delta A = A and projectivity of B^+")
    algebra_cmd("normal-form", cmd_normal_form, True, help="u delta v = s + r")
    algebra_cmd("rep-dims", cmd_rep_dims, True, help="irreducible dimensions of the augmented homotope")
    s = sub.add_parser("projective", parents=[common], help="projectivity of a module")
    s.add_argument("--module", required=True)
    s.set_defaults(func=cmd_projective)
    s = algebra_cmd("recollement", cmd_recollement, True, help="recollement identities on sample modules")
    s.add_argument("--modules", nargs="*", default=None, help="extra A-module files")
    s.add_argument("--seed", required=True)
    s = sub.add_parser("oracle", parents=[common], help="projectivity against the ideal criterion")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", required=True)
    s.add_argument("--max-dim", type=int, default=8)
    s.set_defaults(func=cmd_oracle)
    s = sub.add_parser("nonassoc", parents=[common], help="generic multiplication tensors")
    s.add_argument("action", choices=("density", "preimages", "classify"))
    s.add_argument("algebra", nargs="?", help="tensor file for classify")
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--p", type=int, default=101)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", required=True)
    s.set_defaults(func=cmd_nonassoc)
    s = sub.add_parser("fiber", parents=[common], help="gluing over A x_{A/I} k")
    s.add_argument("action", choices=("glue", "unglue", "unit-kernel"))
    s.add_argument("algebra")
    s.add_argument("--ideal", required=True, help="generators separated by ';'")
    s.add_argument("--u", default=None, help="element of I for B/(u)")
    s.add_argument("--module-kind", choices=("regular", "trivial", "cyclic"), default="regular")
    s.add_argument("--rank", type=int, default=1)
    s.add_argument("--seed", default="0")
    s.set_defaults(func=cmd_fiber)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.command + ("" if not hasattr(args, "action") else " " + args.action))
    try:
        args.func(args, rep)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (AlgebraError, ValueError, NotImplementedError) as e:
        rep.add("evaluation", "error", message="%s: %s" % (type(e).__name__, e))
    text = emit_report(rep, args.format)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as e:
            print("error: cannot write %s: %s" % (args.out, e), file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
