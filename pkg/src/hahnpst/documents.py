"""JSON chain documents and CSV amplitude traces.

Rationals are written as ``{"num": p, "den": q}`` and floats with 17
significant digits, so that output bytes depend only on the input.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

from .dual_hahn import ChainParameters, RecurrenceData
from .errors import DomainError
from .pst import PSTCertificate
from .spinchain import FidelityTrace, SpinChain, build_jacobi

SCHEMA_VERSION = 1
TRACE_HEADER = ("t", "reA", "imA", "absA")


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = "%.17g" % x
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def rational_to_json(q) -> dict | float | None:
    if q is None:
        return None
    if isinstance(q, float):
        return q
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def rational_from_json(obj):
    if obj is None:
        return None
    if isinstance(obj, dict):
        try:
            return Fraction(int(obj["num"]), int(obj["den"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"malformed rational {obj!r}") from exc
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    if isinstance(obj, float):
        return obj
    raise DomainError(f"malformed rational {obj!r}")


def dumps(obj) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    return _encode(obj, 0) + "\n"


def _encode(obj, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if obj is None or isinstance(obj, (bool, str, int)) and not isinstance(obj, float):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, Fraction):
        return _encode(rational_to_json(obj), depth)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if all(k in ("num", "den") for k in obj):
            return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v, depth)}" for k, v in obj.items()) + "}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_encode(v, depth) for v in obj) + "]"
        items = [pad + _encode(v, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):
        return _encode(obj.item(), depth)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def certificate_to_json(c: PSTCertificate) -> dict:
    return {
        "passed": c.passed,
        "T_over_pi": rational_to_json(c.T_over_pi),
        "M": list(c.M),
        "mirror": c.mirror,
        "phase": c.phase,
        "amplitude": c.amplitude,
        "failureReason": c.failure_reason,
        "detail": c.detail,
    }


def certificate_from_json(obj: dict) -> PSTCertificate:
    return PSTCertificate(
        passed=bool(obj["passed"]),
        T_over_pi=rational_from_json(obj.get("T_over_pi")),
        M=tuple(obj.get("M", ())),
        mirror=bool(obj.get("mirror", False)),
        phase=obj.get("phase"),
        amplitude=obj.get("amplitude"),
        failure_reason=obj.get("failureReason"),
        detail=obj.get("detail"),
    )


def chain_document(r: RecurrenceData, p: ChainParameters | None = None,
                   certificate: PSTCertificate | None = None, **extra) -> dict:
    chain = build_jacobi(r)
    doc = {
        "schemaVersion": SCHEMA_VERSION,
        "N": r.N,
        "alpha": rational_to_json(p.alpha) if p else None,
        "beta": rational_to_json(p.beta) if p else None,
        "parity": "odd" if r.N % 2 else "even",
        "b": [rational_to_json(v) for v in r.b],
        "u": [rational_to_json(v) for v in r.u[1:-1]],
        "couplings": list(chain.couplings),
        "fields": list(chain.fields),
    }
    if certificate is not None:
        doc["certificate"] = certificate_to_json(certificate)
    doc.update(extra)
    return doc


def load_chain_document(doc: dict) -> tuple[RecurrenceData, ChainParameters | None, SpinChain]:
    """Validate a chain document and return (recurrence, parameters or None, chain)."""
    if doc.get("schemaVersion") != SCHEMA_VERSION:
        raise DomainError(f"unsupported schemaVersion {doc.get('schemaVersion')!r}")
    try:
        N = int(doc["N"])
        b = [rational_from_json(v) for v in doc["b"]]
        u = [rational_from_json(v) for v in doc["u"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"chain document is missing field {exc}") from exc
    if len(b) != N + 1 or len(u) != N:
        raise DomainError("chain document arrays have the wrong size")
    zero = Fraction(0) if all(isinstance(v, Fraction) for v in b + u) else 0.0
    r = RecurrenceData(b, [zero, *u, zero])
    chain = build_jacobi(r)
    if "couplings" in doc:
        for l, (jc, uu) in enumerate(zip(doc["couplings"], u)):
            if abs(jc * jc - float(uu)) > 1e-12 * abs(float(uu)):
                raise DomainError(f"couplings[{l}]^2 does not match u[{l}]")
    p = None
    if doc.get("alpha") is not None and doc.get("beta") is not None:
        p = ChainParameters(N, rational_from_json(doc["alpha"]), rational_from_json(doc["beta"]))
    return r, p, chain


def trace_csv(trace: FidelityTrace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for t, a in zip(trace.times, trace.amplitudes):
        writer.writerow([format_float(float(t)), format_float(a.real),
                         format_float(a.imag), format_float(abs(a))])
    return buf.getvalue()
