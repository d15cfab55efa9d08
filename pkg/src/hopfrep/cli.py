"""Command-line driver: build an instance, run verification suites, emit a report."""

from __future__ import annotations

import argparse
import sys
from functools import cached_property

from .algebra import Algebra, AlgebraSpec, Variant, algebra_build, relation_checks, verify_associativity, verify_identities
from .blocks import blocks, verify_block_decomposition
from .errors import FieldError, HopfRepError, UnsupportedParameterRegion
from .field import field_make, parse_scalar
from .hopf import HopfStructure, symmetric_verdict, verify_hopf_axioms, verify_integrals
from .radext import (
    radical,
    verify_claimed_radical_layers,
    verify_ext,
    verify_projectives,
    verify_radical,
    wildness_report,
)
from .reps import (
    g_eigenspace_on_tensor,
    iso_test,
    normalize_parameters,
    simple_modules,
    simplicity_certificate,
    socle,
    tensor_module,
    transported_simples,
    verify_simples,
)
from .report import Report, emit_report

COMMANDS = (
    "verify-algebra",
    "verify-hopf",
    "integrals",
    "blocks",
    "simples",
    "projectives",
    "radical",
    "ext",
    "tensor",
    "wildness",
    "report",
)
REPORT_ORDER = ("verify-algebra", "verify-hopf", "integrals", "blocks", "simples", "radical", "projectives", "ext", "wildness")
FULL_SCAN_DIM = 100
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


class Session:
    """Lazily built objects for one instance, shared between suites."""

    def __init__(self, spec: AlgebraSpec, seed: int = 0):
        self.spec = spec
        self.seed = seed
        self.reports: list[Report] = []
        self.summary: dict = {}

    @cached_property
    def algebra(self) -> Algebra:
        return algebra_build(self.spec, check=False)

    @cached_property
    def hopf(self) -> HopfStructure:
        return HopfStructure(self.algebra)

    @cached_property
    def normalization(self):
        spec = self.spec
        if spec.variant == Variant.CHAR_P and spec.lam not in (0, 1):
            return normalize_parameters(self.algebra)
        return None

    @property
    def rep_algebra(self) -> Algebra:
        """The algebra the representation suites run on (lambda normalised to 0 or 1)."""
        return self.normalization.target if self.normalization else self.algebra

    @cached_property
    def blocks(self):
        return blocks(self.rep_algebra)

    @cached_property
    def radical(self):
        return radical(self.rep_algebra)

    @cached_property
    def census(self):
        return self.radical.census

    @cached_property
    def covers(self):
        rep = verify_projectives(self.rep_algebra, self.radical, self.blocks)
        self._projective_report = rep
        return rep.data["covers"]

    def normalisation_report(self):
        norm = self.normalization
        if norm is None or any(r.family == "normalisation" for r in self.reports):
            return
        rep = Report("normalisation")
        rep.extend(norm.report)
        rep.data.clear()
        ok = True
        for (lab, M), (_, T) in zip(transported_simples(norm), simple_modules(norm.target)):
            cert = simplicity_certificate(M)
            ok &= cert["simple"] and M.dim == T.dim
        rep.add(
            "transported simples",
            ok,
            observed=[M.dim for _, M in transported_simples(norm)],
            expected=[T.dim for _, T in simple_modules(norm.target)],
            citation="simples pulled back along the isomorphism stay simple",
        )
        self.reports.append(rep)

    # -- suites ---------------------------------------------------------------

    def run_verify_algebra(self) -> bool:
        A = self.algebra
        rep = Report("algebra")
        want = self.spec.dim
        rep.add(
            "dimension",
            A.dim == want,
            observed=A.dim,
            expected=want,
            citation="dim H = 2^(s+4) t" if A.variant == Variant.CHAR_2 else "dim H = p^(s+2) t",
        )
        rels = relation_checks(self.spec, A.F, A.Lg, A.La, A.Lb)
        for name, ok in rels:
            rep.add(f"relation {name}", ok, observed="holds" if ok else "violated", expected="holds", citation=f"defining relation {name}")
        self.reports.append(rep)
        if not all(ok for _, ok in rels):
            return False
        self.reports.append(verify_identities(A))
        mode = "full" if A.dim <= FULL_SCAN_DIM else "sampled"
        assoc = verify_associativity(A, mode=mode, seed=self.seed)
        self.reports.append(assoc)
        return assoc.ok

    def run_verify_hopf(self) -> bool:
        A = self.algebra
        limit = None if A.dim <= 2 * FULL_SCAN_DIM else 64
        rep = verify_hopf_axioms(self.hopf, limit=limit, seed=self.seed)
        self.reports.append(rep)
        return rep.ok

    def run_integrals(self) -> bool:
        rep = verify_integrals(self.algebra, self.hopf)
        sym = symmetric_verdict(self.algebra, self.hopf, seed=self.seed)
        rep.checks += [c for c in sym.checks if c.name != "unimodular"]
        rep.data.update(sym.data)
        self.summary["symmetric"] = bool(sym.data["symmetric"])
        self.reports.append(rep)
        return rep.ok

    def run_blocks(self) -> bool:
        self.normalisation_report()
        rep = verify_block_decomposition(self.rep_algebra)
        if "blocks" in rep.data:
            self.blocks = rep.data["blocks"]
            self.summary["blocks"] = [b.dim for b in self.blocks]
        self.reports.append(rep)
        return rep.ok

    def run_simples(self) -> bool:
        self.normalisation_report()
        A = self.rep_algebra
        rep = verify_simples(A, simple_modules(A))
        if A.spec.t == 1:
            rep.add("local algebra", len(rep.data["census"]) == 1, observed=len(rep.data["census"]), expected=1, citation="t = 1: H is a local algebra")
        self.summary["simples"] = [M.dim for _, M in rep.data["census"]]
        self.reports.append(rep)
        return rep.ok

    def run_radical(self) -> bool:
        A = self.rep_algebra
        rep = verify_radical(A, self.radical)
        rep.extend(verify_claimed_radical_layers(A, self.radical, self.blocks))
        rep.data.clear()
        self.reports.append(rep)
        return rep.ok

    def run_projectives(self) -> bool:
        self.covers
        rep = self._projective_report
        self.reports.append(rep)
        return rep.ok

    def run_ext(self) -> bool:
        rep = verify_ext(self.rep_algebra, self.radical, self.covers, self.blocks)
        E = rep.data["ext"]
        self.summary["ext_diag"] = [E.get((lab.index, lab.index)) for lab, _ in self.census]
        self.reports.append(rep)
        return rep.ok

    def run_wildness(self) -> bool:
        sym = self.summary.get("symmetric")
        if sym is None:
            sym = bool(symmetric_verdict(self.algebra, self.hopf, seed=self.seed).data["symmetric"])
        rep = wildness_report(self.rep_algebra, self.radical, self.blocks, symmetric=sym)
        self.summary["wildness"] = rep.data["wildness"]
        self.reports.append(rep)
        return rep.ok

    def run_tensor(self, i: int, j: int) -> bool:
        A = self.rep_algebra
        census = dict((lab.index, M) for lab, M in self.census)
        t = A.spec.t
        if not (0 <= i < t and 0 <= j < t):
            raise ConfigError(f"--i and --j must lie in 0..{t - 1}")
        T = tensor_module(census[i], census[j])
        rep = Report("tensor")
        k = (i + j) % t
        if A.variant == Variant.CHAR_P and A.spec.lam == 1 and i >= 1 and j >= 1:
            rep.extend(g_eigenspace_on_tensor(census[i], census[j], i, j))
            rep.data.clear()
        soc, counts = socle(T, self.radical.left_gens, self.census)
        claim = A.variant == Variant.CHAR_P and A.spec.lam == 1
        rep.add(
            f"soc S_{i}(x)S_{j}",
            counts == {k: 1} if claim else "unknown",
            observed={f"S_{x}": v for x, v in counts.items()},
            expected={f"S_{k}": 1} if claim else None,
            citation="soc(S_i (x) S_j) = S_(i+j mod t)" if claim else "no claim for this instance",
        )
        rep.add(
            f"S_{i}(x)S_{j} indecomposable",
            "pass" if sum(counts.values()) == 1 else "unknown",
            observed="simple socle" if sum(counts.values()) == 1 else "socle not simple",
            expected="simple socle",
            citation="a module with simple socle is indecomposable",
        )
        if i == 0 or j == 0:
            other = census[j if i == 0 else i]
            res = iso_test(T, other, seed=self.seed)
            rep.add(
                f"S_{i}(x)S_{j} = S_{i + j}",
                bool(res) if res.definitive or res.isomorphic else "unknown",
                observed=res.verdict,
                expected="isomorphic",
                citation="S_0 (x) S_i = S_i = S_i (x) S_0",
            )
        self.reports.append(rep)
        return rep.ok

    def run(self, command: str, args) -> bool:
        if command == "tensor":
            return self.run_tensor(args.i, args.j)
        return getattr(self, "run_" + command.replace("-", "_"))()

    def instance(self) -> dict:
        s = self.spec
        return {"p": s.p, "s": s.s, "t": s.t, "lambda": s.lam.literal(), "mu": s.mu.literal(), "dim": s.dim}


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--p", type=int, default=d(None))
    parser.add_argument("--s", type=int, default=d(None))
    parser.add_argument("--t", type=int, default=d(None))
    parser.add_argument("--lambda", dest="lam", default=d("0"))
    parser.add_argument("--mu", default=d("0"))
    parser.add_argument("--format", choices=("json", "md"), default=d("json"))
    parser.add_argument("--seed", type=int, default=d(0))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfrep", description="Verify pointed Hopf algebras over Z_n and their representations.")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        _common(sp, suppress=True)
        if name == "tensor":
            sp.add_argument("--i", type=int, required=True)
            sp.add_argument("--j", type=int, required=True)
    return parser


def make_spec(args) -> AlgebraSpec:
    for flag in ("p", "s", "t"):
        if getattr(args, flag) is None:
            raise ConfigError(f"--{flag} is required")
    F = field_make(args.p, args.t)
    lam = parse_scalar(F, args.lam)
    mu = parse_scalar(F, args.mu)
    return AlgebraSpec.make(args.p, args.s, args.t, lam, mu, field=F)


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = make_spec(args)
    except (ConfigError, FieldError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"hopfrep: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    session = Session(spec, seed=args.seed)
    command = args.command
    commands = list(REPORT_ORDER) if command == "report" else ([command] if command else [])
    try:
        for cmd in commands:
            ok = session.run(cmd, args)
            if not ok and command == "report" and cmd in ("verify-algebra", "verify-hopf", "blocks"):
                break
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"hopfrep: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HopfRepError as exc:
        rep = Report("errors")
        status = "unsupported" if isinstance(exc, UnsupportedParameterRegion) else "fail"
        rep.add(type(exc).__name__, status, observed=str(exc), expected=None, citation="")
        session.reports.append(rep)
    summary = dict(session.summary, dim=spec.dim) if command == "report" else None
    if summary is not None:
        summary.pop("symmetric", None)
    out.write(emit_report(session.instance(), session.reports, args.format, summary))
    failed = any(c.status == "fail" for r in session.reports for c in r.checks)
    return EXIT_FAIL if failed else EXIT_OK


def main() -> None:
    sys.exit(run())
