"""Command-line surface.

Subcommands: check, rho, reduce, alpha, enumerate, analyze, bicyclic.
Exit codes: 0 the identity holds / the command succeeded, 1 the identity
fails, 2 usage or strategy errors, 3 an enumeration limit was exceeded.
Output is deterministic for a fixed invocation and seed; the environment
variable UTVAR_SEED overrides --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, report, semidirect
from .analysis import BicyclicElem, EnumerationLimitError
from .funceq import StrategyUnavailableError
from .quiver import reduce_top_vertex, word_image
from .semirings import from_selector
from .variety import Identity, check_identity, oracle_check


def _resolve_seed(args) -> int:
    env = os.environ.get("UTVAR_SEED")
    if env is not None:
        return int(env)
    return args.seed


def _parse_alphabet(text, word=""):
    letters = set(word)
    if text:
        for token in text.split(","):
            token = token.strip()
            if len(token) != 1 or not token.isalpha():
                raise ValueError(f"alphabet letters are single ASCII "
                                 f"letters, got {token!r}")
            letters.add(token)
    return tuple(sorted(letters))


def _emit(payload, args):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_check(args) -> int:
    semiring = from_selector(args.semiring)
    ident = Identity.parse(args.identity, kind=args.kind)
    seed = _resolve_seed(args)
    if args.oracle:
        verdict = oracle_check(ident, args.n, semiring,
                               budget=args.budget, seed=seed)
    else:
        verdict = check_identity(ident, args.n, semiring)
    if args.json:
        print(json.dumps(verdict.json(), indent=2, sort_keys=True))
    else:
        state = "holds" if verdict.holds else "fails"
        print(f"{state}: {ident.text()} in UT_{args.n}({semiring.name})")
        if verdict.method == "randomized" and not verdict.complete:
            print(f"sampled only: {verdict.checked} substitutions, "
                  f"seed {verdict.seed}; no counterexample found")
        if verdict.witness_path is not None:
            print(f"witness path: {verdict.witness_path.text()}")
        if verdict.witness_assignment:
            print("witness assignment:")
            for letter, mat in sorted(verdict.witness_assignment.items()):
                print(f"  {letter} = {mat.text()}")
    return 0 if verdict.holds else 1


def _cmd_rho(args, force_reduce=False, force_alpha=False) -> int:
    semiring = from_selector(args.semiring)
    alpha = force_alpha or args.alpha
    # the semidirect packaging is defined on reduced images only
    reduce_ = force_reduce or args.reduce or alpha
    if alpha and args.n != 2:
        raise ValueError("the semidirect packaging needs --n 2")
    elem = word_image(args.word, args.n, semiring)
    if reduce_:
        elem = reduce_top_vertex(elem)
    if alpha:
        letters = _parse_alphabet(args.alphabet, args.word)
        packed = semidirect.to_semidirect(elem, letters)
        if args.json:
            print(json.dumps(packed.json(), indent=2, sort_keys=True))
        else:
            print(packed.text())
        return 0
    if args.json:
        print(json.dumps(
            {"word": args.word, "n": args.n, "semiring": semiring.name,
             "reduced": reduce_, "terms": elem.json()},
            indent=2, sort_keys=True))
    else:
        print(elem.text())
    return 0


def _cmd_enumerate(args) -> int:
    semiring = from_selector(args.semiring)
    table = analysis.enumerate_free(
        args.n, semiring, args.rank, limit=args.limit, mode=args.mode,
        alphabet=_parse_alphabet(args.alphabet) if args.alphabet else None)
    wrote = []
    if args.csv:
        wrote.append(report.write_cayley_csv(table, args.csv))
    if args.json_out:
        wrote.append(report.write_cayley_json(table, args.json_out))
    if args.figure:
        wrote.append(report.render_cayley_figure(table, args.figure))
    if args.json:
        print(json.dumps(table.json(), indent=2, sort_keys=True))
    else:
        print(f"free {table.mode} of rank {args.rank} over "
              f"UT_{args.n}({semiring.name}): size {table.size}")
        for path in wrote:
            print(f"wrote {path}")
    return 0


def _cmd_analyze(args) -> int:
    semiring = from_selector(args.semiring)
    rep = analysis.local_finiteness_report(
        semiring, args.n, bound=args.bound, powers=args.powers)
    wrote = []
    if args.figure:
        wrote.append(report.render_growth_figure(
            semiring, args.n, args.powers, args.figure))
    if args.json_out:
        wrote.append(report.write_json(rep, args.json_out))
    if args.json:
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        torsion = rep["torsion"]
        if torsion["found"]:
            print(f"torsion ({torsion['i']},{torsion['j']}); locally finite")
        elif rep["verdict"] == "not locally finite":
            print(f"no torsion identity up to {args.bound}; "
                  f"not locally finite for any n >= 1")
        else:
            print(f"no torsion identity up to {args.bound}; "
                  f"local finiteness unknown")
        if "rank1" in rep:
            r1 = rep["rank1"]
            if r1["collision"]:
                i, j = r1["collision"]
                print(f"rank-1 images of a^0..a^{r1['count']}: "
                      f"{r1['distinct']} distinct (a^{i} = a^{j})")
            else:
                print(f"rank-1 images of a^0..a^{r1['count']}: "
                      f"all {r1['distinct']} distinct")
        for path in wrote:
            print(f"wrote {path}")
    return 0


def _parse_bicyclic(text) -> BicyclicElem:
    i, j = (int(p) for p in text.split(","))
    if i < 0 or j < 0:
        raise ValueError("bicyclic exponents are nonnegative")
    return BicyclicElem(i, j)


def _cmd_bicyclic(args) -> int:
    payload = {}
    lines = []
    if args.product:
        x = _parse_bicyclic(args.product[0])
        y = _parse_bicyclic(args.product[1])
        z = analysis.bicyclic_mul(x, y)
        payload["product"] = {"x": list(x), "y": list(y), "result": list(z)}
        lines.append(f"({x.i},{x.j}) * ({y.i},{y.j}) = ({z.i},{z.j})   "
                     f"[{x.text()} . {y.text()} = {z.text()}]")
    if args.embed:
        x = _parse_bicyclic(args.embed)
        mat = analysis.bicyclic_embed(x)
        payload["embed"] = {"element": list(x), "matrix": mat.json()}
        lines.append(f"embed({x.i},{x.j}) = {mat.text()}")
    if args.verify_embedding:
        result = analysis.verify_bicyclic_embedding(bound=args.bound)
        payload["verification"] = result
        if not result["ok"]:
            raise RuntimeError(f"embedding validation failed: {result}")
        lines.append(
            f"morphism+injectivity verified "
            f"({result['morphism_checked']} products, "
            f"{result['injective_checked']} elements, bound {args.bound})")
    if not payload:
        raise ValueError("nothing to do: pass --product, --embed or "
                         "--verify-embedding")
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="utvar",
        description="Identity checking and free objects for upper "
                    "triangular matrix monoids over commutative semirings")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, semiring_default="tropical", n_default=2):
        p.add_argument("--semiring", default=semiring_default,
                       help="semiring selector: tropical, boolean, nat, "
                            "zmod:<p>, interval, freeidpt:<k>, table:<path>")
        p.add_argument("--n", type=int, default=n_default,
                       help="matrix dimension")
        p.add_argument("--json", action="store_true",
                       help="structured output")

    p = sub.add_parser("check", help="decide an identity in UT_n(S)")
    common(p)
    p.add_argument("identity", help='identity text, e.g. "xy = yx"')
    p.add_argument("--kind", choices=["semigroup", "monoid"], default=None)
    p.add_argument("--oracle", action="store_true",
                   help="use the substitution oracle instead of the "
                        "decision procedure")
    p.add_argument("--budget", type=int, default=20000,
                   help="substitutions for the randomized oracle")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check)

    def word_opts(p):
        p.add_argument("--word", required=True, help="word over ASCII letters")
        p.add_argument("--alphabet", default=None,
                       help="comma-separated alphabet, e.g. a,b,c")

    p = sub.add_parser("rho", help="print the path-algebra image of a word")
    common(p, n_default=3)
    word_opts(p)
    p.add_argument("--lambda", dest="reduce", action="store_true",
                   help="apply the top-vertex reduction")
    p.add_argument("--alpha", action="store_true",
                   help="package as a semidirect-product element (n = 2)")
    p.set_defaults(func=_cmd_rho)

    p = sub.add_parser("reduce",
                       help="print the reduced (top vertex collapsed) image")
    common(p, n_default=3)
    word_opts(p)
    p.set_defaults(func=lambda a: _cmd_rho(a, force_reduce=True),
                   reduce=True, alpha=False)

    p = sub.add_parser("alpha",
                       help="print the semidirect-product image (n = 2)")
    common(p, n_default=2)
    word_opts(p)
    p.set_defaults(func=lambda a: _cmd_rho(a, force_alpha=True),
                   reduce=True, alpha=True)

    p = sub.add_parser("enumerate",
                       help="enumerate a finite free object (Cayley table)")
    common(p, semiring_default="boolean")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--mode", choices=["monoid", "semigroup"],
                   default="monoid")
    p.add_argument("--limit", type=int, default=4096)
    p.add_argument("--alphabet", default=None)
    p.add_argument("--csv", default=None, help="write the table as CSV")
    p.add_argument("--json-out", default=None, help="write the table as JSON")
    p.add_argument("--figure", default=None,
                   help="render a Cayley-table heatmap to this file")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("analyze", help="local finiteness analysis")
    common(p)
    p.add_argument("--bound", type=int, default=12,
                   help="torsion search bound")
    p.add_argument("--powers", type=int, default=20,
                   help="rank-1 powers to compare")
    p.add_argument("--figure", default=None,
                   help="render the rank-1 growth curve to this file")
    p.add_argument("--json-out", default=None, help="write the report JSON")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bicyclic", help="bicyclic monoid utilities")
    p.add_argument("--product", nargs=2, metavar=("X", "Y"),
                   help='two elements "i,j" to multiply')
    p.add_argument("--embed", metavar="X",
                   help='element "i,j" to embed into UT_2(tropical)')
    p.add_argument("--verify-embedding", action="store_true",
                   help="validate the embedding (morphism + injectivity)")
    p.add_argument("--bound", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bicyclic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, StrategyUnavailableError, RuntimeError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
