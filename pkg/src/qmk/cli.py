"""Command-line surface: atlas generation, verification sweeps, and an
element calculator over a tiny expression grammar.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 unsupported scale.  Output files are byte-stable across runs; timings are
reported on stderr only.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time

from . import bases, strata
from .minors import all_minor_pairs, minor_label, quantum_minor
from .qalgebra import AlgebraElement, algebra
from .scalars import LaurentScalar, ONE

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_SCALE = 3

VERIFY_SELECTORS = ("bases", "delta-minors", "kernel-generation",
                    "theorem66", "polynormal", "section72")


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"parse error at position {pos}: {message}")
        self.pos = pos


class _Parser:
    """expr := ['-'] term (('+'|'-') term)*
    term := factor ('*' factor)*
    factor := atom ('^' int)?
    atom := 'X[' i ',' j ']' | '[' digits '|' digits ']' | 'q' | int | '(' expr ')'
    """

    def __init__(self, text: str, alg):
        self.text = text
        self.pos = 0
        self.alg = alg

    def parse(self) -> AlgebraElement:
        self._ws()
        if self.pos >= len(self.text):
            raise ParseError("empty expression", self.pos)
        out = self._expr()
        self._ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return out

    def _ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self):
        neg = False
        if self._peek() == "-":
            self.pos += 1
            neg = True
        out = self._term()
        if neg:
            out = -out
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                out = out + self._term()
            elif ch == "-":
                self.pos += 1
                out = out - self._term()
            else:
                return out

    def _term(self):
        out = self._factor()
        while self._peek() == "*":
            self.pos += 1
            out = out * self._factor()
        return out

    def _factor(self):
        out = self._atom()
        if self._peek() == "^":
            self.pos += 1
            k = self._int()
            if k >= 0:
                out = out**k
            else:
                out = self.alg.one().scale(
                    self._scalar_of(out, self.pos).inverse() ** (-k))
        return out

    def _scalar_of(self, x: AlgebraElement, pos: int) -> LaurentScalar:
        if set(x.terms) - {()}:
            raise ParseError("negative powers are only defined for scalars", pos)
        return x.terms.get((), LaurentScalar())

    def _int(self) -> int:
        self._ws()
        start = self.pos
        if self._peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def _expect(self, ch: str):
        if self._peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def _atom(self):
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            out = self._expr()
            self._expect(")")
            return out
        if ch == "q":
            self.pos += 1
            return self.alg.one().scale(LaurentScalar({1: 1}))
        if ch == "X":
            self.pos += 1
            self._expect("[")
            i = self._int()
            self._expect(",")
            j = self._int()
            self._expect("]")
            try:
                return self.alg.gen(i, j)
            except ValueError as exc:
                raise ParseError(str(exc), self.pos) from None
        if ch == "[":
            start = self.pos
            self.pos += 1
            rows = self._digits()
            self._expect("|")
            cols = self._digits()
            self._expect("]")
            try:
                return quantum_minor(self.alg, (tuple(rows), tuple(cols)))
            except ValueError as exc:
                raise ParseError(str(exc), start) from None
        if ch.isdigit() or ch == "-":
            return self.alg.scalar(self._int())
        raise ParseError(f"unexpected {ch!r}" if ch else "unexpected end of input",
                         self.pos)

    def _digits(self):
        self._ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected index digits", start)
        return [int(c) for c in self.text[start:self.pos]]


def parse_expression(text: str, n: int) -> AlgebraElement:
    return _Parser(text, algebra(n)).parse()


# ---------------------------------------------------------------------------
# golden values
# ---------------------------------------------------------------------------


def golden_counts(n: int):
    path = os.environ.get("QMK_GOLDEN_DIR")
    if path:
        candidate = os.path.join(path, f"atlas_counts_n{n}.json")
        if os.path.exists(candidate):
            with open(candidate, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            return {"total": data["total"],
                    "by_t": {int(k): v for k, v in data["by_t"].items()}}
    return strata.ATLAS_GOLDEN.get(n)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _emit(payload: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def cmd_atlas(args) -> int:
    try:
        atlas = strata.build_atlas(args.n)
    except strata.UnsupportedScaleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    doc = {
        "n": atlas["n"],
        "total": atlas["total"],
        "by_t": {str(t): atlas["by_t"][t] for t in sorted(atlas["by_t"])},
        "descriptors": [d.as_dict() for d in atlas["descriptors"]],
    }
    if args.format == "json":
        payload = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        lines = [f"atlas n={atlas['n']}: {atlas['total']} descriptors"]
        for t in sorted(atlas["by_t"], reverse=True):
            lines.append(f"  stratum length {t}: {atlas['by_t'][t]}")
        for d in atlas["descriptors"]:
            lines.append(
                f"r={''.join(map(str, d.rc.r)) or '-'} "
                f"c={''.join(map(str, d.rc.c)) or '-'} "
                f"q+=({d.qplus_id}) q-=({d.qminus_id})  {d.schematic}")
        payload = "\n".join(lines) + "\n"
    _emit(payload, args.out)
    golden = golden_counts(args.n)
    if golden is not None:
        if atlas["total"] != golden["total"] or atlas["by_t"] != golden["by_t"]:
            print(f"error: atlas counts {atlas['total']}/{atlas['by_t']} do not "
                  f"match golden {golden}", file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def _verify_bases(n: int, bound: int):
    alg = algebra(n)
    records = []
    for klass in ("preferred", "antipreferred", "standard", "antistandard"):
        worst = None
        count = 0
        for bd in bases.bidegrees_up_to(alg, bound):
            report = bases.verify_basis(alg, klass, bd)
            count += 1
            if not report.ok:
                worst = report
                break
        records.append({
            "check": f"basis-{klass}",
            "n": n,
            "bound": bound,
            "bidegrees": count,
            "pass": worst is None,
            **({"first_failure": worst.as_dict()} if worst else {}),
        })
    # standard-count cross-check against the insertion correspondence
    from .tableaux import enumerate_bitableaux, weight_to_content

    mismatch = None
    for bd in bases.bidegrees_up_to(alg, bound):
        bc = (weight_to_content(bd[0]), weight_to_content(bd[1]))
        cnt = len(enumerate_bitableaux("standard", bc, n))
        if cnt != len(bases.pbw_monomials(alg, bd)):
            mismatch = bd
            break
    records.append({"check": "standard-count-rsk", "n": n, "bound": bound,
                    "pass": mismatch is None})
    return records


def _verify_delta_minors(n: int):
    from .coalg import TensorElement, delta

    alg = algebra(n)
    bad = []
    for size in range(1, n + 1):
        for pair in all_minor_pairs(n, size):
            want = {}
            for K in itertools.combinations(range(1, n + 1), size):
                left = quantum_minor(alg, (pair[0], K))
                right = quantum_minor(alg, (K, pair[1]))
                for ml, cl in left.terms.items():
                    for mr, cr in right.terms.items():
                        key = (ml, mr)
                        acc = want.get(key)
                        want[key] = cl * cr if acc is None else acc + cl * cr
            want = {k: v for k, v in want.items() if v}
            if delta(quantum_minor(alg, pair)).terms != want:
                bad.append(minor_label(pair))
    return [{"check": "delta-minors", "n": n, "minors": sum(
        len(all_minor_pairs(n, s)) for s in range(1, n + 1)),
        "pass": not bad, **({"failures": bad} if bad else {})}]


def _verify_kernel_generation(n: int, bound: int):
    if n != 3:
        raise ValueError("kernel-generation verification is defined for n=3")
    atlas = strata.build_atlas(3)
    t3 = [d for d in atlas["descriptors"] if d.rc.t == 3]
    failures = []
    for d in t3:
        fails = strata.kernel_generation_check(d, 3, bound)
        if fails:
            failures.append({"qplus": d.qplus_id, "qminus": d.qminus_id,
                             "bidegrees": len(fails)})
    return [{"check": "kernel-generation", "n": 3, "bound": bound,
             "descriptors": len(t3), "pass": not failures,
             **({"failures": failures} if failures else {})}]


def _verify_theorem66(n: int):
    records = []
    for t in (1, 2):
        ok = True
        for l in range(1, n + 1):
            for lp in range(1, n + 1):
                for sp in "+-":
                    for sq in "+-":
                        if not strata.theorem66_delta_inclusion(t, l, lp, sp, sq, n):
                            ok = False
        records.append({"check": f"theorem66-delta-t{t}", "n": n, "pass": ok})
    return records


def _verify_polynormal(n: int, bound: int):
    if n != 3:
        raise ValueError("the polynormal example is defined for n=3")
    alg = algebra(3)
    minors2 = [quantum_minor(alg, p) for p in all_minor_pairs(3, 2)]
    order = bases.find_polynormal_order(minors2, bound)
    ok = order is not None
    if ok:
        seq = order + [alg.gen(1, 2), alg.gen(2, 2), alg.gen(3, 2)]
        ok = bases.verify_polynormal(seq, bound)
    col_minors = [quantum_minor(alg, (I, (1, 3)))
                  for I in itertools.combinations((1, 2, 3), 2)]
    truncation_fails = not bases.is_normal_mod(alg.gen(1, 2), col_minors, bound)
    return [
        {"check": "polynormal-sequence", "n": 3, "bound": bound, "pass": ok},
        {"check": "polynormal-truncation-fails", "n": 3, "bound": bound,
         "pass": truncation_fails},
    ]


def _verify_section72(bound: int):
    atlas = strata.build_atlas(3)
    alg = algebra(3)
    data = strata.section72_ideal()
    gens = [quantum_minor(alg, p) for p in data["P"]]
    d = strata.find_descriptor(atlas, gens)
    fails = strata.kernel_generation_check(d, 3, bound)
    return [
        {"check": "section72-delta", "pass": strata.section72_delta_inclusion()},
        {"check": "section72-kernel", "bound": bound, "pass": not fails},
    ]


def cmd_verify(args) -> int:
    n = args.n
    bound = args.bound if args.bound else bases.default_bound(algebra(n))
    t0 = time.monotonic()
    try:
        if args.what == "bases":
            records = _verify_bases(n, bound)
        elif args.what == "delta-minors":
            records = _verify_delta_minors(n)
        elif args.what == "kernel-generation":
            records = _verify_kernel_generation(n, min(bound, 3))
        elif args.what == "theorem66":
            records = _verify_theorem66(n)
        elif args.what == "polynormal":
            records = _verify_polynormal(n, max(bound, 4))
        else:
            records = _verify_section72(min(bound, 3))
    except (ValueError, strata.UnsupportedScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.monotonic() - t0
    ok = all(r["pass"] for r in records)
    if args.format == "json":
        payload = json.dumps(records, indent=1, sort_keys=True) + "\n"
    else:
        lines = [f"{'PASS' if r['pass'] else 'FAIL'} {r['check']}" for r in records]
        payload = "\n".join(lines) + "\n"
    _emit(payload, args.out)
    print(f"verify {args.what}: {len(records)} checks in {elapsed:.2f}s",
          file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_expr(args) -> int:
    try:
        x = parse_expression(args.expression, args.n)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    bd = x.bidegree() if x.is_bihomogeneous() and not x.is_zero() else None
    if args.format == "json":
        doc = {"text": x.text(),
               "bidegree": [list(bd[0]), list(bd[1])] if bd else None}
        payload = json.dumps(doc, sort_keys=True) + "\n"
    else:
        payload = x.text() + "\n"
        if bd:
            payload += ("bidegree: rows=(" + ",".join(map(str, bd[0]))
                        + ") cols=(" + ",".join(map(str, bd[1])) + ")\n")
    _emit(payload, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qmk",
        description="exact kernel for quantized matrix coordinate rings")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=3, help="matrix size (default 3)")
        p.add_argument("--bound", type=int, default=0,
                       help="total-degree bound (0 = per-size default)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallelism degree (checks currently run serially)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized property checks")

    p_atlas = sub.add_parser("atlas", help="construct the prime atlas")
    common(p_atlas)
    p_atlas.set_defaults(func=cmd_atlas)

    p_verify = sub.add_parser("verify", help="run a verification sweep")
    p_verify.add_argument("what", choices=VERIFY_SELECTORS)
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_expr = sub.add_parser("expr", help="evaluate an element expression")
    p_expr.add_argument("expression")
    common(p_expr)
    p_expr.set_defaults(func=cmd_expr)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "bound", 0) < 0:
        print("error: --bound must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
