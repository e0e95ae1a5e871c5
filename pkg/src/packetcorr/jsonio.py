"""JSON encoding of parameters and results.  Half-integers travel as doubled integers under *_x2 keys."""

from __future__ import annotations

import json
import re

from .arith import HalfInteger, Permutation
from .coherent import FormalCombination
from .correspondence import ComponentCharacter, CompleteParameter
from .packets import PacketLabel, PureFormLabel
from .parameters import (
    Character, InfinitesimalCharacter, Multisegment, PAdicArthurParameter, PAdicBlock,
    RealArthurParameter, RealBlock, RealLParameter, Segment, ValidationError,
)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed JSON: {e}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _req(d: dict, key: str):
    if not isinstance(d, dict) or key not in d:
        raise ValidationError(f"missing field {key!r}")
    return d[key]


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValidationError(f"expected an integer, got {x!r}")
    return x


# ---- lambda ----

def lambda_to_json(lam: InfinitesimalCharacter) -> dict:
    return {"entries_x2": [x.twice for x in lam]}


def lambda_from_json(d: dict) -> InfinitesimalCharacter:
    return InfinitesimalCharacter(tuple(HalfInteger(_int(x)) for x in _req(d, "entries_x2")))


# ---- Arthur parameters ----

def psi_to_json(psi: RealArthurParameter) -> dict:
    return {"n": psi.n, "blocks": [{"k": b.k, "m": b.m} for b in psi.blocks], "parity": psi.parity}


def psi_from_json(d: dict) -> RealArthurParameter:
    blocks = [RealBlock(_int(_req(b, "k")), _int(_req(b, "m"))) for b in _req(d, "blocks")]
    psi = RealArthurParameter.of(blocks, d.get("parity"))
    if "n" in d and _int(d["n"]) != psi.n:
        raise ValidationError(f"n={d['n']} but the blocks have total size {psi.n}")
    return psi


def psi_padic_to_json(psi: PAdicArthurParameter) -> dict:
    return {"blocks": [{"a": b.a, "b": b.b} for b in psi.blocks], "dual": psi.dual_type,
            "parity": psi.parity}


def psi_padic_from_json(d: dict) -> PAdicArthurParameter:
    blocks = tuple(PAdicBlock(_int(_req(b, "a")), _int(_req(b, "b"))) for b in _req(d, "blocks"))
    return PAdicArthurParameter(blocks, _req(d, "dual"), d.get("parity", "good"))


# ---- Langlands parameters ----

def lparam_to_json(phi: RealLParameter) -> dict:
    return {"characters": [{"t_x2": c.t.twice, "s_x2": c.s.twice} for c in phi.characters]}


def lparam_from_json(d: dict) -> RealLParameter:
    return RealLParameter(tuple(
        Character(HalfInteger(_int(_req(c, "t_x2"))), HalfInteger(_int(_req(c, "s_x2"))))
        for c in _req(d, "characters")))


def segment_to_json(s: Segment) -> dict:
    return {"lo_x2": s.lo.twice, "hi_x2": s.hi.twice}


def segment_from_json(d: dict) -> Segment:
    return Segment(HalfInteger(_int(_req(d, "lo_x2"))), HalfInteger(_int(_req(d, "hi_x2"))))


def multisegment_to_json(m: Multisegment) -> list:
    return [segment_to_json(s) for s in m.segments]


def multisegment_from_json(xs: list) -> Multisegment:
    return Multisegment(tuple(segment_from_json(s) for s in xs))


def character_to_json(eps: ComponentCharacter) -> list:
    out = []
    for k, v in eps.signs:
        if isinstance(k, Character):
            out.append({"t_x2": k.t.twice, "s_x2": k.s.twice, "sign": v})
        else:
            out.append({**segment_to_json(k), "sign": v})
    return out


def character_from_json(xs: list) -> ComponentCharacter:
    signs = []
    for e in xs:
        if "t_x2" in e:
            key = Character(HalfInteger(_int(e["t_x2"])), HalfInteger(_int(e.get("s_x2", 0))))
        else:
            key = segment_from_json(e)
        signs.append((key, _int(_req(e, "sign"))))
    return ComponentCharacter(tuple(signs))


def complete_to_json(xi: CompleteParameter) -> dict:
    if isinstance(xi.lparam, Multisegment):
        lp = {"multisegment": multisegment_to_json(xi.lparam)}
    else:
        lp = lparam_to_json(xi.lparam)
    return {**lp, "character": character_to_json(xi.character)}


def complete_from_json(d: dict) -> CompleteParameter:
    if "multisegment" in d:
        lp = multisegment_from_json(d["multisegment"])
    else:
        lp = lparam_from_json(d)
    return CompleteParameter(lp, character_from_json(d.get("character", [])))


def label_to_json(label: PacketLabel | None):
    return None if label is None else {"l": list(label.l), "eta": list(label.eta)}


def label_from_json(d) -> PacketLabel | None:
    if d is None:
        return None
    return PacketLabel(tuple(_int(x) for x in _req(d, "l")), tuple(_int(x) for x in _req(d, "eta")))


def pq_to_json(pq: PureFormLabel | None):
    return None if pq is None else {"p": list(pq.p), "q": list(pq.q)}


def pq_from_json(d) -> PureFormLabel | None:
    if d is None:
        return None
    return PureFormLabel(tuple(_int(x) for x in _req(d, "p")), tuple(_int(x) for x in _req(d, "q")))


def permutation_to_json(p: Permutation) -> list:
    return list(p.images)


def permutation_from_json(xs) -> Permutation:
    try:
        return Permutation(tuple(_int(x) for x in xs))
    except ValueError as e:
        raise ValidationError(str(e)) from None


# ---- formal combinations ----

_SYMBOL = re.compile(r"^Theta_x2\((-?\d+(?:,-?\d+)*)?\)$")


def combination_to_json(x: FormalCombination) -> dict:
    return {"Theta_x2(" + ",".join(map(str, k)) + ")": v for k, v in sorted(x.terms.items(), reverse=True)}


def combination_from_json(d: dict) -> FormalCombination:
    terms = {}
    for key, v in d.items():
        m = _SYMBOL.match(key)
        if not m:
            raise ValidationError(f"bad symbol {key!r}")
        w = tuple(int(t) for t in m.group(1).split(",")) if m.group(1) else ()
        terms[w] = _int(v)
    return FormalCombination(terms)
