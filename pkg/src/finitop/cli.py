"""Command-line front end.

Exit status: 0 when the command succeeds and any property it tests holds,
1 when a tested property fails, 2 on usage, parse or input errors.
"""

import argparse
import sys

from . import textformat
from .capacity import set_max_size
from .cofinite import CofiniteMap, CofiniteSpace, cf_is_limit_set, cf_prime_split
from .cstar import (
    min_primal,
    phi as cstar_phi,
    delta as cstar_delta,
    psi as cstar_psi,
    verify_hull_identities,
    verify_map_facts,
    verify_theorem_min,
)
from .dot import config_dot, hasse_dot
from .envelope import decomposition, extend_to_envelope, sobrify
from .errors import CapacityError, FinitopError, InvalidInput, ParseError
from .hyperspace import build_hyperspace
from .limits import is_limit_set, limit_witness, max_limit_sets
from .poset import is_closed
from .retraction import (
    build_theta,
    check_hypothesis,
    search_counterexample,
    validate_config,
)


class UsageError(FinitopError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _lookup(kind, getter, name):
    try:
        return getter(name)
    except KeyError:
        raise UsageError(f"unknown {kind} {name!r}") from None


class Session:
    def __init__(self, args, out):
        self.args = args
        self.out = out
        self.ws = textformat.parse_files(args.input or [])
        self.dot = None

    def emit(self, line=""):
        self.out.write(line + "\n")

    def space(self, name):
        return _lookup("space", self.ws.space, name)

    def finite_space(self, name, command):
        s = self.space(name)
        if isinstance(s, CofiniteSpace):
            raise UsageError(f"{command} is not available for the cofinite space")
        return s

    def write_dot(self):
        if self.args.dot and self.dot is not None:
            with open(self.args.dot, "w", encoding="utf-8") as fh:
                fh.write(self.dot)

    # commands

    def cmd_envelope(self):
        x = self.space(self.args.space)
        env = sobrify(x)
        for line in env.describe():
            self.emit(line)
        if not isinstance(x, CofiniteSpace):
            generic = [env.family.point(s) for s in env.non_point_primes()]
            self.dot = hasse_dot(env.poset, generic)
        return 0

    def cmd_ml(self):
        x = self.space(self.args.space)
        fam = max_limit_sets(x)
        for m in fam:
            self.emit(m.display() if hasattr(m, "display") else str(m))
        if not isinstance(x, CofiniteSpace):
            self.dot = hasse_dot(fam.as_subspace)
        return 0

    def cmd_limit(self):
        x = self.space(self.args.space)
        s = textformat.parse_set(x, self.args.set)
        if isinstance(x, CofiniteSpace):
            cf_is_limit_set(s)
            self.emit(f"{s} is a limit set")
            return 0
        self.dot = hasse_dot(x, s)
        if is_limit_set(s):
            self.emit(f"{s.display()} is a limit set")
            return 0
        witness = limit_witness(s, "literal")
        self.emit(f"{s.display()} is not a limit set")
        self.emit("witness: " + " & ".join(u.display() for u in witness) + " = {}")
        return 1

    def cmd_prime(self):
        x = self.space(self.args.space)
        s = textformat.parse_set(x, self.args.set)
        if isinstance(x, CofiniteSpace):
            split = cf_prime_split(s)
            if split is None:
                self.emit(f"{s} is prime")
                return 0
            self.emit(f"{s} is not prime: {split[0]} | {split[1]}")
            return 1
        self.dot = hasse_dot(x, s)
        if not is_closed(s):
            raise InvalidInput(f"{s.display()} is not closed")
        split = decomposition(s)
        if split is None:
            self.emit(f"{s.display()} is prime")
            return 0
        self.emit(f"{s.display()} is not prime: {split[0].display()} | {split[1].display()}")
        return 1

    def cmd_hyper(self):
        x = self.finite_space(self.args.space, "hyper")
        h = build_hyperspace(x)
        self.out.write(textformat.emit_space(h.as_poset, f"F({self.args.space})"))
        self.dot = hasse_dot(h.as_poset)
        return 0

    def cmd_extend(self):
        f = _lookup("map", self.ws.map, self.args.map)
        ext = extend_to_envelope(f)
        if isinstance(f, CofiniteMap):
            for k, v in sorted(f.table.items()):
                self.emit(f"{{{k}}} -> {v}")
            self.emit(f"{{n}} -> {f.default}  (every other n)")
            self.emit(f"COFULL -> {ext.generic}")
            return 0
        for i in ext.source.display_order:
            x = ext.source.elements[i]
            self.emit(f"{x} -> {ext(x)}")
        self.dot = hasse_dot(ext.source)
        return 0

    def _configs(self):
        target = self.args.config
        try:
            with open(target, encoding="utf-8") as fh:
                text = fh.read()
        except OSError:
            return [_lookup("config", self.ws.config, target)]
        local = textformat.parse(text, source=target, workspace=self.ws)
        configs = list(local.configs.values())
        if not configs:
            raise UsageError(f"{target} declares no config")
        return configs

    def cmd_check_retraction(self):
        status = 0
        for n, c in enumerate(self._configs()):
            if n:
                self.emit()
            status = max(status, self._check_one(c))
        return status

    def _check_one(self, c):
        self.emit(f"config {c.name}")
        self.dot = config_dot(c)
        report = validate_config(c)
        for line in report.lines():
            self.emit(line)
        if not report.ok:
            self.emit("FAIL  invalid configuration")
            return 1
        hyp = check_hypothesis(c)
        if not hyp.holds:
            self.emit("FAIL  closure hypothesis")
            for line in hyp.witness.lines():
                self.emit("  " + line)
            return 1
        self.emit("pass  closure hypothesis")
        theta = build_theta(c)
        for line in theta.lines():
            self.emit(line)
        self.emit("PASS" if theta.ok else "FAIL")
        return 0 if theta.ok else 1

    def cmd_mine_cex(self):
        found = search_counterexample(self.args.extra, self.args.size)
        self.emit(f"{len(found)} counterexamples with at most {self.args.extra} extra points "
                  f"and factors of at most {self.args.size} points")
        shown = found if self.args.show is None else found[: self.args.show]
        for c in shown:
            self.emit()
            self.out.write(textformat.emit_config(c))
        if shown:
            self.dot = config_dot(shown[0])
        return 0

    def algebra(self, name):
        return _lookup("algebra", self.ws.algebra, name)

    def ideal_arg(self, text):
        name, sep, lit = text.partition(":")
        if not sep:
            raise UsageError(f"expected ALGEBRA:hull{{...}}, got {text!r}")
        return textformat.parse_ideal(self.algebra(name), lit)

    def cmd_cstar(self):
        op, args = self.args.op, self.args.operands
        need = {"phi": 2, "delta": 2, "psi": 1, "verify-hulls": 2, "verify-min": 2,
                "verify-maps": 2, "min-primal": 1}[op]
        if len(args) != need:
            raise UsageError(f"cstar {op} takes {need} operand(s)")
        if op in ("phi", "delta"):
            i1, i2 = self.ideal_arg(args[0]), self.ideal_arg(args[1])
            t = i1.algebra.tensor(i2.algebra)
            fn = cstar_phi if op == "phi" else cstar_delta
            self.emit(str(fn(i1, i2, t)))
            return 0
        if op == "psi":
            j1, j2 = cstar_psi(self.ideal_arg(args[0]))
            self.emit(f"({j1}, {j2})")
            return 0
        if op == "min-primal":
            for i in min_primal(self.algebra(args[0])):
                self.emit(str(i))
            return 0
        a1, a2 = self.algebra(args[0]), self.algebra(args[1])
        report = {
            "verify-hulls": verify_hull_identities,
            "verify-min": verify_theorem_min,
            "verify-maps": verify_map_facts,
        }[op](a1, a2)
        for line in report.lines():
            self.emit(line)
        return 0 if report.ok else 1


def _common(defaults):
    # Subcommands repeat the global flags with suppressed defaults so a flag
    # given before the subcommand is not reset by it.
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    common = _Parser(add_help=False)
    common.add_argument("-i", "--input", action="append", metavar="FILE",
                        help="read declarations from FILE (repeatable)", **kw)
    common.add_argument("--dot", metavar="FILE", help="write a Hasse diagram to FILE", **kw)
    common.add_argument("--max-size", type=int, metavar="N",
                        help="size guard for exhaustive enumerations", **kw)
    return common


def build_parser():
    common = _common(True)
    sub_common = _common(False)

    parser = _Parser(prog="finitop", parents=[common],
                     description="Finite topological spaces, envelopes and limit sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[sub_common], help=help_)

    add("envelope", "list the prime closed sets").add_argument("space")
    add("ml", "list the maximal limit sets").add_argument("space")
    p = add("limit", "test whether a set is a limit set")
    p.add_argument("space")
    p.add_argument("set")
    p = add("prime", "test whether a closed set is prime")
    p.add_argument("space")
    p.add_argument("set")
    add("hyper", "print the hyperspace of closed sets as a space").add_argument("space")
    add("extend", "extend a map to the envelope of its source").add_argument("map")
    add("check-retraction", "check a retraction configuration").add_argument(
        "config", help="config name, or a file whose configs are all checked")
    p = add("mine-cex", "search for configurations violating the closure hypothesis")
    p.add_argument("--extra", type=int, default=2, metavar="N")
    p.add_argument("--size", type=int, default=3, metavar="K")
    p.add_argument("--show", type=int, default=None, metavar="M",
                   help="print only the first M configurations")
    p = add("cstar", "block algebra computations")
    p.add_argument("op", choices=["phi", "delta", "psi", "min-primal",
                                  "verify-hulls", "verify-maps", "verify-min"])
    p.add_argument("operands", nargs="*")
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.max_size is not None:
            if args.max_size < 1:
                raise UsageError("--max-size must be positive")
            set_max_size(args.max_size)
        try:
            session = Session(args, out)
            status = getattr(session, "cmd_" + args.command.replace("-", "_"))()
            session.write_dot()
            return status
        finally:
            if args.max_size is not None:
                set_max_size(None)
    except (UsageError, ParseError, InvalidInput, CapacityError) as exc:
        err.write(f"finitop: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
