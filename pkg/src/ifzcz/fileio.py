"""JSON interchange for sequence sets and reports.

Set file schema (``format_version`` 1)::

    {
      "format_version": 1,
      "period": N,
      "size": K,
      "representation": "polyphase" | "dense",
      "modulus": q,                       # polyphase only
      "sequences": [[e0, e1, ...], ...]   # exponents in [0, q)
                 | [[{"re": x, "im": y}, ...], ...],
      "provenance": {...} | null
    }

Entry ``n`` of a polyphase sequence is ``exp(-2j*pi*e_n/q)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .constructions import GeneralParams, PiFParams, S1Params, S2Params
from .seqcore import ComplexSequence, SequenceSet, common_modulus

FORMAT_VERSION = 1


class SetFileError(ValueError):
    """Malformed set file."""


def sequence_to_json(seq: ComplexSequence) -> dict:
    if seq.is_exact and seq.unit_magnitude:
        r = seq.reduced()
        return {"modulus": r.modulus, "exponents": [int(e) for e in r.exponents]}
    return {"values": [{"re": float(z.real), "im": float(z.imag)} for z in seq.array]}


def sequence_from_json(obj: dict) -> ComplexSequence:
    try:
        if "exponents" in obj:
            q = int(obj["modulus"])
            exps = [int(e) for e in obj["exponents"]]
            if any(not 0 <= e < q for e in exps):
                raise SetFileError("exponents must lie in [0, modulus)")
            return ComplexSequence.polyphase(q, exps)
        return ComplexSequence.from_values([complex(v["re"], v["im"]) for v in obj["values"]])
    except (KeyError, TypeError) as exc:
        raise SetFileError(f"bad sequence record: {exc}") from exc


def params_to_json(p) -> dict | None:
    if p is None:
        return None
    seeds = lambda s: [sequence_to_json(h) for h in s]  # noqa: E731
    if isinstance(p, S1Params):
        return {"construction": "s1", "K": p.K, "M": p.M, "offsets": list(p.offsets),
                "seeds": seeds(p.seeds)}
    if isinstance(p, GeneralParams):
        return {"construction": "general", "K": p.K, "M": p.M, "e": p.e, "t": p.t,
                "seeds": seeds(p.seeds)}
    if isinstance(p, PiFParams):
        return {"construction": "pi_f", "K": p.K, "M": p.M, "pi": list(p.pi), "f": list(p.f),
                "seeds": seeds(p.seeds)}
    if isinstance(p, S2Params):
        return {"construction": "s2", "K": p.K, "M": p.M, "perms": [list(s) for s in p.perms],
                "offsets": list(p.offsets),
                "modulations": None if p.modulations is None else seeds(p.modulations)}
    if isinstance(p, dict):
        return p
    raise TypeError(f"cannot serialise provenance {type(p).__name__}")


def params_from_json(obj):
    if obj is None:
        return None
    kind = obj.get("construction")
    seeds = lambda key: tuple(sequence_from_json(h) for h in obj[key])  # noqa: E731
    try:
        if kind == "s1":
            return S1Params(obj["K"], obj["M"], seeds("seeds"), tuple(obj["offsets"]))
        if kind == "general":
            return GeneralParams(obj["K"], obj["M"], obj["e"], obj["t"], seeds("seeds"))
        if kind == "pi_f":
            return PiFParams(obj["K"], obj["M"], tuple(obj["pi"]), tuple(obj["f"]), seeds("seeds"))
        if kind == "s2":
            mods = None if obj.get("modulations") is None else seeds("modulations")
            return S2Params(obj["K"], obj["M"], [tuple(s) for s in obj["perms"]], mods,
                            tuple(obj["offsets"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SetFileError(f"bad provenance record: {exc}") from exc
    return obj


def set_to_json(seqs: SequenceSet) -> dict:
    doc = {"format_version": FORMAT_VERSION, "period": seqs.period, "size": seqs.size}
    if all(s.is_exact and s.unit_magnitude for s in seqs):
        q = common_modulus(*(s.reduced().modulus for s in seqs))
        doc["representation"] = "polyphase"
        doc["modulus"] = q
        doc["sequences"] = [[int(e) for e in s.reduced().lift(q).exponents] for s in seqs]
    else:
        doc["representation"] = "dense"
        doc["sequences"] = [[{"re": float(z.real), "im": float(z.imag)} for z in s.array] for s in seqs]
    doc["provenance"] = params_to_json(seqs.provenance)
    return doc


def set_from_json(doc: dict) -> SequenceSet:
    try:
        version = doc["format_version"]
        if version != FORMAT_VERSION:
            raise SetFileError(f"unsupported format_version {version}")
        rep = doc["representation"]
        rows = doc["sequences"]
        if rep == "polyphase":
            q = int(doc["modulus"])
            seqs = [sequence_from_json({"modulus": q, "exponents": row}) for row in rows]
        elif rep == "dense":
            seqs = [sequence_from_json({"values": row}) for row in rows]
        else:
            raise SetFileError(f"unknown representation {rep!r}")
        if len(seqs) != doc["size"] or any(s.period != doc["period"] for s in seqs):
            raise SetFileError("size/period fields disagree with the sequences")
        return SequenceSet(tuple(seqs), params_from_json(doc.get("provenance")))
    except (KeyError, TypeError) as exc:
        raise SetFileError(f"malformed set file: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_set(seqs: SequenceSet, path) -> None:
    Path(path).write_text(dumps(set_to_json(seqs)))


def read_set(path) -> SequenceSet:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SetFileError(f"{path}: invalid JSON ({exc})") from exc
    return set_from_json(doc)


def read_sequence(path) -> ComplexSequence:
    """A single sequence from a set file (first member) or a bare record."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SetFileError(f"{path}: invalid JSON ({exc})") from exc
    if "format_version" in doc:
        return set_from_json(doc)[0]
    return sequence_from_json(doc)


def scalar_to_json(z) -> dict:
    from .seqcore import RootScalar

    if isinstance(z, RootScalar):
        r = z.reduced()
        return {"modulus": r.modulus, "exponent": r.exponent, "scale": str(r.scale)}
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def fraction_str(x: Fraction) -> str:
    return str(Fraction(x))
