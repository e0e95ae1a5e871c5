"""Command-line front end: `packetcorr <verb> ...`."""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .arith import HalfInteger
from .checks import SUITES, run_suite
from .coherent import FormalCombination, apply_word
from .correspondence import (
    component_structure_real, iota_L, lambda_to_lambdap, psi_real_to_padic, tilde_iota,
)
from .orbits import (
    BlockInvolution, BlockStructure, d_counts, enumerate_orbits, incidence, is_full_rank,
    iota_orbit, kind_for, same_orbit,
)
from .packets import (
    complete_param_regular_real, packet_ddr_padic, packet_regular_real,
    packet_singular_labels, verify_regular_correspondence,
)
from .parameters import ValidationError, target_group

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _json_arg(text: str):
    if text == "-":
        text = sys.stdin.read()
    return jsonio.loads(text)


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [headers] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _signs(eps) -> str:
    return "".join("+" if e > 0 else "-" for e in eps)


# ---- verbs ----

def cmd_packet_real(args):
    psi = jsonio.psi_from_json(_json_arg(args.psi))
    members = packet_regular_real(psi)
    payload = {"psi": jsonio.psi_to_json(psi), "members": [
        {"label": jsonio.label_to_json(m.label), "pq": jsonio.pq_to_json(m.pq),
         "epsilon": list(m.epsilon), "complete": jsonio.complete_to_json(m.complete)}
        for m in members]}
    rows = [[m.label, f"{m.pq.p}/{m.pq.q}", _signs(m.epsilon),
             " ".join(f"({c.t},{c.s})" for c in m.complete.lparam.characters)] for m in members]
    return payload, _table(["label", "p/q", "eps", "characters"], rows), EXIT_OK


def _padic_psi(args):
    if args.psi_padic:
        return jsonio.psi_padic_from_json(_json_arg(args.psi_padic))
    if args.psi is None or args.delta is None:
        raise UsageError("packet padic needs --psi-padic, or --psi with --delta")
    return psi_real_to_padic(jsonio.psi_from_json(_json_arg(args.psi)), args.delta)


def cmd_packet_padic(args):
    psiQ = _padic_psi(args)
    members = packet_ddr_padic(psiQ)
    payload = {"psi_padic": jsonio.psi_padic_to_json(psiQ), "members": [
        {"label": jsonio.label_to_json(m.label), "epsilon": list(m.epsilon),
         "complete": jsonio.complete_to_json(m.complete)} for m in members]}
    rows = [[m.label if m.label else "-", _signs(m.epsilon), m.complete.lparam] for m in members]
    return payload, _table(["label", "eps", "multisegment"], rows), EXIT_OK


def cmd_packet_singular(args):
    psi = jsonio.psi_from_json(_json_arg(args.psi))
    rows_ = packet_singular_labels(psi, args.delta)
    payload = {"psi": jsonio.psi_to_json(psi), "delta": args.delta, "labels": [
        {"label": jsonio.label_to_json(s.label), "eps_real": list(s.eps_real),
         "real_vanishes": s.real_vanishes, "padic_label": jsonio.label_to_json(s.padic_label),
         "eps_padic": list(s.eps_padic), "padic_vanishes": s.padic_vanishes, "agree": s.agree}
        for s in rows_]}
    rows = [[s.label, _signs(s.eps_real), "0" if s.real_vanishes else "nonzero", s.padic_label,
             "0" if s.padic_vanishes else "nonzero"] for s in rows_]
    code = EXIT_OK if all(s.agree for s in rows_) else EXIT_MISMATCH
    return payload, _table(["label", "eps", "real", "p-adic label", "p-adic"], rows), code


def cmd_correspond(args):
    if args.phi is not None:
        phi = jsonio.lparam_from_json(_json_arg(args.phi))
        m = iota_L(phi, args.delta)
        st = component_structure_real(phi, args.delta)
        payload = {"lparam": jsonio.lparam_to_json(phi), "delta": args.delta,
                   "multisegment": jsonio.multisegment_to_json(m), "component_rank": st.rank}
        return payload, f"{m}\ncomponent group rank {st.rank}", EXIT_OK
    if args.psi is None:
        raise UsageError("correspond needs --phi or --psi")
    psi = jsonio.psi_from_json(_json_arg(args.psi))
    if args.label is not None:
        label = jsonio.label_from_json(_json_arg(args.label))
        xi = tilde_iota(complete_param_regular_real(psi, label), args.delta)
        payload = {"psi": jsonio.psi_to_json(psi), "delta": args.delta,
                   "label": jsonio.label_to_json(label), "image": jsonio.complete_to_json(xi)}
        return payload, f"{xi.lparam}\n{_signs(xi.character.values())}", EXIT_OK
    rep = verify_regular_correspondence(psi, args.delta)
    payload = {"psi": jsonio.psi_to_json(psi), "delta": args.delta, "H": str(rep.H),
               "psi_padic": jsonio.psi_padic_to_json(rep.psi_padic), "ok": rep.ok,
               "matches": [{"real": jsonio.label_to_json(m.real_label),
                            "padic": jsonio.label_to_json(m.padic_label), "flipped": m.flipped}
                           for m in rep.matches],
               "mismatches": rep.mismatches}
    rows = [[m.real_label, m.padic_label, "yes" if m.flipped else ""] for m in rep.matches]
    text = f"H = {rep.H}\n" + _table(["real label", "p-adic label", "flipped"], rows)
    if rep.mismatches:
        text += "\n" + "\n".join(f"MISMATCH {x}" for x in rep.mismatches)
    return payload, text, EXIT_OK if rep.ok else EXIT_MISMATCH


def _involution(args, text):
    lam = jsonio.lambda_from_json(_json_arg(args.lam))
    s = jsonio.permutation_from_json(_json_arg(text))
    return lam, BlockInvolution(s, BlockStructure.of(lam), args.kind or kind_for(lam))


def cmd_orbits_enumerate(args):
    lam = jsonio.lambda_from_json(_json_arg(args.lam))
    reps = enumerate_orbits(lam, args.kind)
    payload = {"lambda": jsonio.lambda_to_json(lam), "count": len(reps),
               "representatives": [{"s": jsonio.permutation_to_json(x.s),
                                    "incidence": [list(r) for r in incidence(x)]} for x in reps]}
    rows = [[x.s, incidence(x)] for x in reps]
    return payload, _table(["s", "incidence"], rows) + f"\n{len(reps)} orbits", EXIT_OK


def cmd_orbits_compare(args):
    lam, x = _involution(args, args.s)
    _, y = _involution(args, args.t)
    same = same_orbit(x, y)
    payload = {"same_orbit": same, "incidence": [[list(r) for r in incidence(z)] for z in (x, y)]}
    return payload, "same orbit" if same else "different orbits", EXIT_OK


def cmd_orbits_segment(args):
    lam, x = _involution(args, args.s)
    m = iota_orbit(x, lam, args.delta)
    full = is_full_rank(m, lambda_to_lambdap(lam, args.delta))
    H = target_group(lam, args.delta)
    payload = {"multisegment": jsonio.multisegment_to_json(m), "full_rank": full, "H": str(H),
               "d_counts": [list(r) for r in d_counts(x)]}
    return payload, f"{m}\nfull rank: {full}\nH = {H}", EXIT_OK


def cmd_translate(args):
    # any weight is allowed here, not only an infinitesimal character of a real parameter
    lam = tuple(HalfInteger(jsonio._int(x)) for x in jsonio._req(_json_arg(args.lam), "entries_x2"))
    word = _json_arg(args.word)
    if not isinstance(word, list) or not all(isinstance(j, int) and not isinstance(j, bool) for j in word):
        raise ValidationError("--word must be a JSON list of indices")
    if args.start is not None:
        x = jsonio.combination_from_json(_json_arg(args.start))
    else:
        x = FormalCombination.symbol(lam)
    out, end = apply_word(lam, word, x)
    payload = {"start": jsonio.combination_to_json(x), "end_x2": [e.twice for e in end],
               "result": jsonio.combination_to_json(out)}
    return payload, f"end = ({', '.join(map(str, end))})\n{out!r}", EXIT_OK


def cmd_check(args):
    results = run_suite(args.suite)
    payload = {"suite": args.suite, "passed": all(r.passed for r in results),
               "results": [{"name": r.name, "passed": r.passed, "summary": r.summary,
                            "failures": r.failures} for r in results]}
    text = "\n".join(r.line() for r in results)
    return payload, text, EXIT_OK if payload["passed"] else EXIT_MISMATCH


# ---- parser ----

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default="table")

    p = _Parser(prog="packetcorr", description="Real and p-adic A-packet correspondence toolkit.")
    verbs = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    packet = verbs.add_parser("packet", help="list packet members").add_subparsers(
        dest="which", required=True, parser_class=_Parser)
    sp = packet.add_parser("real", parents=[common])
    sp.add_argument("--psi", required=True)
    sp.set_defaults(func=cmd_packet_real)
    sp = packet.add_parser("padic", parents=[common])
    sp.add_argument("--psi-padic")
    sp.add_argument("--psi")
    sp.add_argument("--delta", type=int)
    sp.set_defaults(func=cmd_packet_padic)
    sp = packet.add_parser("singular", parents=[common])
    sp.add_argument("--psi", required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.set_defaults(func=cmd_packet_singular)

    sp = verbs.add_parser("correspond", parents=[common], help="transfer a parameter or verify a packet")
    sp.add_argument("--psi")
    sp.add_argument("--phi")
    sp.add_argument("--label")
    sp.add_argument("--delta", type=int, required=True)
    sp.set_defaults(func=cmd_correspond)

    verify = verbs.add_parser("verify", help="verify one parameter").add_subparsers(
        dest="which", required=True, parser_class=_Parser)
    sp = verify.add_parser("correspond", parents=[common])
    sp.add_argument("--psi", required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.set_defaults(func=cmd_correspond, phi=None, label=None)

    orbits = verbs.add_parser("orbits", help="block involutions").add_subparsers(
        dest="which", required=True, parser_class=_Parser)
    for name, func, extra in [("enumerate", cmd_orbits_enumerate, []),
                              ("compare", cmd_orbits_compare, ["--s", "--t"]),
                              ("segment", cmd_orbits_segment, ["--s"])]:
        sp = orbits.add_parser(name, parents=[common])
        sp.add_argument("--lambda", dest="lam", required=True)
        sp.add_argument("--kind", choices=["good", "skew"])
        for flag in extra:
            sp.add_argument(flag, required=True)
        if name == "segment":
            sp.add_argument("--delta", type=int, required=True)
        sp.set_defaults(func=func)

    sp = verbs.add_parser("translate", parents=[common], help="apply a word of translations")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--start")
    sp.set_defaults(func=cmd_translate)

    sp = verbs.add_parser("check", parents=[common], help="run a verification suite")
    sp.add_argument("--suite", choices=sorted(SUITES), default="all")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        payload, text, code = args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:  # includes ValidationError
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    print(jsonio.dumps(payload) if args.format == "json" else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
