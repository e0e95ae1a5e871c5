"""Exhaustive verification suites, shared by the test-suite and the `check` command."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations, product
from math import prod

from . import jsonio
from .arith import HalfInteger, Permutation, compose, exact_rank, signed_skew_lift
from .coherent import (
    verify_commutation, verify_factorization, verify_schedule, verify_two_step,
    translation_schedule,
)
from .correspondence import (
    h_is_symplectic, iota_L, lambda_to_lambdap, psi_real_to_padic,
)
from .orbits import (
    SKEW, BlockStructure, all_block_involutions, conjugacy_orbit,
    d_counts, d_counts_by_rank, enumerate_orbits, full_rank_multisegments, incidence,
    iota_on_L, iota_orbit, is_full_rank, is_self_dual_admissible, same_orbit,
)
from .packets import (
    all_pure_forms, complete_param_regular_real, complete_param_via_standard_module,
    epsilon_eta_form, epsilon_q_form, leta_to_pq, minus_identity_expected,
    packet_ddr_padic, packet_regular_real, pq_to_leta, singular_rows,
    psi_restriction_class, regularize, standard_module_data, verify_regular_correspondence,
)
from .parameters import (
    GOOD, InfinitesimalCharacter, associated_L_param_real, RealArthurParameter, RealBlock,
    inf_char_of_real_A, is_regular, minimal_delta, target_group, validate_delta,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    summary: str
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.summary}"


def _result(name: str, failures: list[str], summary: str) -> CheckResult:
    return CheckResult(name, not failures, summary, failures[:20])


# ---- parameter families ----

def real_psis(max_n: int, kmax: int, max_r: int | None = None, regular: bool | None = None):
    """Good-parity real Arthur parameters with sum m <= max_n and |k| <= kmax."""
    out = []
    for n in range(1, max_n + 1):
        cands = [(k, m) for m in range(1, n + 1) for k in range(-kmax, kmax + 1) if (k + m - n) % 2 == 0]
        cands.sort(reverse=True)

        def rec(start: int, left: int, acc: list):
            if left == 0:
                out.append(RealArthurParameter.of(acc, GOOD))
                return
            if max_r is not None and len(acc) == max_r:
                return
            for i in range(start, len(cands)):
                k, m = cands[i]
                if m <= left:
                    rec(i, left - m, acc + [RealBlock(k, m)])

        rec(0, n, [])
    if regular is None:
        return out
    return [p for p in out if is_regular(inf_char_of_real_A(p)) == regular]


def minimal_deltas(psi: RealArthurParameter, lam: InfinitesimalCharacter | None = None) -> list[int]:
    lam = lam or inf_char_of_real_A(psi)
    return [minimal_delta(lam, 1), minimal_delta(lam, 0)]


def compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def lambda_for(sizes, gaps, base_x2: int) -> InfinitesimalCharacter:
    """Dominant lambda with blocks of the given sizes, successive values differing by gaps."""
    vals, cur = [], base_x2
    for size, gap in zip(reversed(sizes), (0,) + tuple(reversed(gaps))):
        cur += 2 * gap
        vals = [cur] * size + vals
    return InfinitesimalCharacter(tuple(HalfInteger(v) for v in vals))


# ---- criterion 1 and 2 ----

def check_regular_correspondence(max_n: int = 8, max_r: int = 3, kmax: int = 8) -> CheckResult:
    failures, count = [], 0
    for psi in real_psis(max_n, kmax, max_r, regular=True):
        lam = inf_char_of_real_A(psi)
        for delta in minimal_deltas(psi, lam):
            if validate_delta(lam, delta) != all(b.k + delta > b.m for b in psi.blocks):
                failures.append(f"{jsonio.psi_to_json(psi)} delta={delta}: validity tests disagree")
            rep = verify_regular_correspondence(psi, delta)
            count += 1
            if not rep.ok:
                failures += [f"{jsonio.psi_to_json(psi)} delta={delta}: {m}" for m in rep.mismatches]
    return _result("criterion 1 (regular correspondence)", failures,
                   f"{count} (psi, delta) pairs, {len(failures)} mismatches")


def check_endoscopic_characters(max_n: int = 8, max_r: int = 3, kmax: int = 8) -> CheckResult:
    failures, count = [], 0
    for psi in real_psis(max_n, kmax, max_r, regular=True):
        for delta in minimal_deltas(psi):
            rep = verify_regular_correspondence(psi, delta)
            psiQ = rep.psi_padic
            padic = {m.label: m for m in packet_ddr_padic(psiQ)}
            real = {m.label: m for m in packet_regular_real(psi)}
            symp = h_is_symplectic(psiQ)
            for match in rep.matches:
                member = real[match.real_label]
                count += 1
                eps_r = member.epsilon
                if eps_r != epsilon_q_form(member.pq, psi.ms):
                    failures.append(f"{psi}: two character formulas differ at {member.pq}")
                if prod(eps_r) != minus_identity_expected(member.pq):
                    failures.append(f"{psi}: value at -I fails at {member.pq}")
                eps_p = padic[match.padic_label].epsilon
                want = psi_restriction_class(eps_r, psiQ) if symp else eps_r
                if want != eps_p:
                    failures.append(f"{jsonio.psi_to_json(psi)} delta={delta} {match.real_label}: "
                                    f"{eps_r} vs p-adic {eps_p}")
    return _result("criterion 2 (endoscopic characters)", failures,
                   f"{count} matched members, {len(failures)} disagreements")


def check_character_formulas(max_n: int = 10) -> CheckResult:
    """q-form = eta-form and the -I law, over all block-size tuples with sum <= max_n."""
    failures, count = [], 0
    for n in range(1, max_n + 1):
        for ms in compositions(n):
            for pq in all_pure_forms(ms):
                label = pq_to_leta(pq, ms)
                count += 1
                if epsilon_q_form(pq, ms) != epsilon_eta_form(label, ms):
                    failures.append(f"ms={ms} pq={pq}")
                if prod(epsilon_q_form(pq, ms)) != minus_identity_expected(pq):
                    failures.append(f"ms={ms} pq={pq}: -I law")
                if leta_to_pq(label, ms) != pq:
                    failures.append(f"ms={ms} pq={pq}: round trip")
    return _result("character formulas", failures, f"{count} pure-form labels")


# ---- criterion 3 ----

def check_cross_derivation(max_n: int = 8, kmax: int = 8) -> CheckResult:
    failures, count = [], 0
    for psi in real_psis(max_n, kmax, regular=True):
        for pq in all_pure_forms(psi.ms):
            count += 1
            a = complete_param_regular_real(psi, pq_to_leta(pq, psi))
            b = complete_param_via_standard_module(psi, pq)
            if a != b:
                failures.append(f"{jsonio.psi_to_json(psi)} pq={pq}")
    return _result("criterion 3 (two derivations of the complete parameter)", failures,
                   f"{count} labels compared")


# ---- criterion 4 ----

def _kinds(n: int):
    return [GOOD, SKEW] if n % 2 == 0 else [GOOD]


def check_orbit_theory(max_n: int = 6) -> CheckResult:
    failures, pairs, structures = [], 0, 0
    for n in range(1, max_n + 1):
        for sizes in compositions(n):
            blocks = BlockStructure(sizes)
            for kind in _kinds(n):
                structures += 1
                invs = all_block_involutions(blocks, kind)
                orbit_of = {x.s: conjugacy_orbit(x) for x in invs}
                for x in invs:
                    if d_counts(x) != d_counts_by_rank(x):
                        failures.append(f"d counts differ for {x.s} sizes={sizes}")
                    for y in invs:
                        pairs += 1
                        if same_orbit(x, y) != (y.s in orbit_of[x.s]):
                            failures.append(f"sizes={sizes} {kind}: {x.s} vs {y.s}")
                classes = {frozenset(o) for o in orbit_of.values()}
                lam = lambda_for(sizes, (1,) * (len(sizes) - 1), 1 if kind == GOOD and n % 2 == 0 else 0)
                reps = enumerate_orbits(lam, kind)
                if len(reps) != len(classes):
                    failures.append(f"sizes={sizes} {kind}: {len(reps)} reps vs {len(classes)} classes")
                if len({incidence(r) for r in reps}) != len(reps):
                    failures.append(f"sizes={sizes} {kind}: repeated incidence matrix")
                if kind == SKEW and any(r_[u] % 2 for rep_ in reps for u, r_ in enumerate(incidence(rep_))):
                    failures.append(f"sizes={sizes}: odd diagonal in skew representative")
    counts = []
    for n in range(1, 6):
        lam = lambda_for((1,) * n, (1,) * (n - 1), 1 if n % 2 == 0 else 0)
        counts.append(len(enumerate_orbits(lam)))
    if counts != [1, 2, 4, 10, 26]:
        failures.append(f"involution counts {counts}")
    return _result("criterion 4 (orbit theory)", failures,
                   f"{structures} block structures, {pairs} pairs, counts {counts}")


# ---- criterion 5 ----

def _lambdas_for_geometry(max_n: int, delta: int):
    """Every block pattern and gap pattern (gaps 1 or 2), in each parity class, with
    the smallest lambda_n allowed by delta."""
    for n in range(1, max_n + 1):
        classes = ["int"] if n % 2 else ["int", "half"]
        for cls in classes:
            # lambda_n > (1 - delta)/2, doubled: twice > 1 - delta
            lo = 1 - delta + 1
            if (lo % 2 == 0) != (cls == "int"):
                lo += 1
            for sizes in compositions(n):
                for gaps in product((1, 2), repeat=len(sizes) - 1):
                    yield lambda_for(sizes, gaps, lo)


def check_geometry(max_n: int = 6) -> CheckResult:
    failures, count = [], 0
    for delta in (1, 2):
        for lam in _lambdas_for_geometry(max_n, delta):
            count += 1
            H = target_group(lam, delta)
            lp = lambda_to_lambdap(lam, delta)
            reps = enumerate_orbits(lam)
            images = [iota_orbit(x, lam, delta) for x in reps]
            tag = f"lambda={[str(x) for x in lam]} delta={delta}"
            if len(set(images)) != len(images):
                failures.append(f"{tag}: iota not injective")
            for x, m in zip(reps, images):
                if m != iota_on_L(x, lam, delta):
                    failures.append(f"{tag}: two routes to the multisegment differ at {x.s}")
                if not is_full_rank(m, lp):
                    failures.append(f"{tag}: {m} not full rank")
                if not is_self_dual_admissible(m, H.dual_type):
                    failures.append(f"{tag}: {m} not self-dual admissible")
            admissible = [m for m in full_rank_multisegments(lp) if is_self_dual_admissible(m, H.dual_type)]
            if len(admissible) != len(reps):
                failures.append(f"{tag}: {len(admissible)} full-rank multisegments vs {len(reps)} orbits")
            elif set(admissible) != set(images):
                failures.append(f"{tag}: image differs from the full-rank set")
    return _result("criterion 5 (orbits vs full-rank multisegments)", failures,
                   f"{count} (lambda, delta) cases")


# ---- criterion 6 ----

def dominant_lambdas(max_n: int, top: int):
    for n in range(1, max_n + 1):
        def rec(acc):
            if len(acc) == n:
                yield tuple(acc)
                return
            hi = acc[-1] if acc else top
            for v in range(hi, -1, -1):
                yield from rec(acc + [v])
        yield from rec([])


def check_translation_calculus(max_n: int = 5, top: int = 4) -> CheckResult:
    failures = []
    n_fact = n_comm = n_two = 0
    for lam in dominant_lambdas(max_n, top):
        n = len(lam)
        for r in range(1, n + 1):
            for J in combinations(range(1, n + 1), r):
                rep = verify_factorization(lam, J)
                n_fact += 1
                failures += rep.failures
        for j1, j2 in combinations(range(1, n + 1), 2):
            if abs(lam[j1 - 1] - lam[j2 - 1]) != 1:
                rep = verify_commutation(lam, j1, j2)
                n_comm += 1
                failures += rep.failures
        for j in range(1, n + 1):
            if j == n or lam[j - 1] > lam[j]:
                rep = verify_two_step(lam, j)
                n_two += 1
                failures += rep.failures
    return _result("criterion 6 (translation calculus)", failures,
                   f"{n_fact} factorizations, {n_comm} commutations, {n_two} two-step decompositions")


# ---- criterion 7 ----

def check_singular(max_n: int = 8, kmax: int = 8) -> CheckResult:
    failures, count, labels = [], 0, 0
    verdicts: dict[int, tuple[list, bool]] = {}  # per distinct row tuple
    for psi in real_psis(max_n, kmax):
        lam = inf_char_of_real_A(psi)
        regular = is_regular(lam)
        for delta in minimal_deltas(psi, lam):
            count += 1
            rows = singular_rows(psi, delta)
            labels += len(rows)
            if id(rows) not in verdicts:
                verdicts[id(rows)] = ([s.label for s in rows if not s.agree],
                                      any(s.real_vanishes for s in rows))
            bad, vanishes = verdicts[id(rows)]
            failures += [f"{jsonio.psi_to_json(psi)} delta={delta} {lab}" for lab in bad]
            if regular and vanishes:
                failures.append(f"{jsonio.psi_to_json(psi)}: label vanishes for regular psi")
    return _result("criterion 7 (singular nonvanishing)", failures,
                   f"{count} (psi, delta) pairs, {labels} labels, {len(verdicts)} distinct label tables")


def check_schedules(max_n: int = 6, kmax: int = 6) -> CheckResult:
    failures, count = [], 0
    for psi in real_psis(max_n, kmax, max_r=3, regular=False):
        _, t = regularize(psi)
        rep = verify_schedule(translation_schedule(psi, t), t, psi.ms)
        count += 1
        failures += [f"{jsonio.psi_to_json(psi)}: {f}" for f in rep.failures]
    return _result("translation schedules", failures, f"{count} singular parameters")


# ---- criterion 8 ----

GOLDEN_PSI = {"n": 2, "blocks": [{"k": 2, "m": 2}], "parity": "good"}
GOLDEN_DELTA = 1
GOLDEN_FILE = "psi_k2_m2_delta1.json"


def golden_payload() -> dict:
    psi = jsonio.psi_from_json(GOLDEN_PSI)
    delta = GOLDEN_DELTA
    lam = inf_char_of_real_A(psi)
    H = target_group(lam, delta)
    psiQ = psi_real_to_padic(psi, delta)
    real = []
    for m in packet_regular_real(psi):
        smd = standard_module_data(psi, m.pq)
        real.append({
            "label": jsonio.label_to_json(m.label),
            "pq": jsonio.pq_to_json(m.pq),
            "epsilon": list(m.epsilon),
            "epsilon_q_form": list(epsilon_q_form(m.pq, psi.ms)),
            "complete": jsonio.complete_to_json(complete_param_via_standard_module(psi, m.pq)),
            "standard_module": {"nu": list(smd.nu), "chi": list(smd.chi),
                                "mu_x2": [x.twice for x in smd.mu], "eps_minus": list(smd.eps_minus)},
            "image": jsonio.multisegment_to_json(iota_L(m.complete.lparam, delta)),
        })
    padic = [{"label": jsonio.label_to_json(m.label), "epsilon": list(m.epsilon),
              "complete": jsonio.complete_to_json(m.complete)} for m in packet_ddr_padic(psiQ)]
    rep = verify_regular_correspondence(psi, delta)
    return {
        "psi": jsonio.psi_to_json(psi),
        "delta": delta,
        "lambda": jsonio.lambda_to_json(lam),
        "lambdap": [{"x_x2": x.twice, "mult": c} for x, c in lambda_to_lambdap(lam, delta).mult],
        "H": str(H),
        "dual": H.dual_name,
        "psi_padic": jsonio.psi_padic_to_json(psiQ),
        "real_packet": real,
        "padic_packet": padic,
        "matches": [{"real": jsonio.label_to_json(m.real_label), "padic": jsonio.label_to_json(m.padic_label),
                     "flipped": m.flipped} for m in rep.matches],
        "mismatches": rep.mismatches,
    }


def golden_text() -> str:
    return jsonio.dumps(golden_payload()) + "\n"


def stored_golden_text() -> str:
    return resources.files("packetcorr").joinpath("golden", GOLDEN_FILE).read_text()


def check_golden() -> CheckResult:
    failures = []
    stored = stored_golden_text()
    if stored != golden_text():
        failures.append("recomputed fixture differs from the stored file")
    data = json.loads(stored)
    if len(data["real_packet"]) != 3:
        failures.append(f"packet size {len(data['real_packet'])}")
    want = sorted([{"lo_x2": -3, "hi_x2": 1}, {"lo_x2": -1, "hi_x2": 3}], key=lambda s: (s["lo_x2"], s["hi_x2"]))
    l1 = [m for m in data["padic_packet"] if m["label"]["l"] == [1]]
    if len(l1) != 1 or l1[0]["complete"]["multisegment"] != want or l1[0]["complete"]["character"]:
        failures.append("l=1 p-adic member differs from {[-1/2,3/2],[-3/2,1/2]} with trivial character")
    if data["mismatches"]:
        failures.append("correspondence mismatches in fixture")
    return _result("criterion 8 (worked fixture)", failures, "psi={(k=2,m=2)}, delta=1")


# ---- smaller invariant suites ----

def check_arith(max_n: int = 6) -> CheckResult:
    failures = []
    for n in range(1, max_n + 1):
        for kind in _kinds(n):
            for x in all_block_involutions(BlockStructure((1,) * n), kind):
                P = x.s.matrix()
                if P.transpose() != x.s.inverse().matrix():
                    failures.append(f"transpose of {x.s}")
                if kind == SKEW:
                    S = signed_skew_lift(x.s)
                    if S @ S != -type(S).identity(n):
                        failures.append(f"skew lift square {x.s}")
                    if S.transpose() != -S:
                        failures.append(f"skew lift not skew {x.s}")
    if exact_rank(Permutation.from_cycles(3, [(1, 3)]).matrix()) != 3:
        failures.append("rank of (13)")
    if compose(Permutation.from_cycles(3, [(1, 2)]), Permutation.from_cycles(3, [(2, 3)])) != \
            Permutation.from_cycles(3, [(1, 2, 3)]):
        failures.append("(12)(23)")
    return _result("arithmetic", failures, f"involutions up to n={max_n}")


def check_parameters(max_n: int = 6, kmax: int = 6) -> CheckResult:
    failures, count = [], 0
    for psi in real_psis(max_n, kmax, max_r=4):
        count += 1
        lam = inf_char_of_real_A(psi)
        if lam.parity != psi.parity:
            failures.append(f"{psi}: parity tag")
        for delta in minimal_deltas(psi):
            H = target_group(lam, delta)
            if delta % 2 and (H.N - psi.n) % 2 or not delta % 2 and H.N % 2:
                failures.append(f"{psi}: N parity")
            psiQ = psi_real_to_padic(psi, delta)
            if psiQ.N != H.N:
                failures.append(f"{psi}: sum a b != N")
            if iota_L(associated_L_param_real(psi), delta).content() != lambda_to_lambdap(lam, delta).as_counter():
                failures.append(f"{psi}: content")
    return _result("parameters", failures, f"{count} parameters")


SUITES = {
    "arith": [check_arith],
    "parameters": [check_parameters],
    "correspondence": [check_regular_correspondence, check_endoscopic_characters],
    "packets": [check_character_formulas, check_cross_derivation, check_singular],
    "orbits": [check_orbit_theory, check_geometry],
    "coherent": [check_translation_calculus, check_schedules],
    "golden": [check_golden],
    "acceptance": [check_regular_correspondence, check_endoscopic_characters, check_cross_derivation,
                   check_orbit_theory, check_geometry, check_translation_calculus, check_singular,
                   check_golden],
}
SUITES["all"] = [f for name in ("arith", "parameters", "correspondence", "packets", "orbits",
                                "coherent", "golden") for f in SUITES[name]]


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(name)
    return [f() for f in SUITES[name]]
