"""JSON documents: datum input and analysis reports.

Rationals are strings "p/q"; elements of Q(zeta_M) are lists of rationals
(power-basis coefficients), with M given by the document's ``order`` field.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .exact.cyclotomic import CycloScalar, cyclotomic_field
from .exact.linalg import Subspace, matmul, rank
from .mhs import DegenerationDatum, ValidationReport


class DocumentError(ValueError):
    """Malformed input document (exit code 2)."""


# -- scalars ---------------------------------------------------------------------
def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise DocumentError(f"boolean {x!r} is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"malformed rational {x!r}") from None
    raise DocumentError(f"expected an integer or a 'p/q' string, got {x!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_scalar(x, order: int):
    K = cyclotomic_field(order)
    if isinstance(x, list):
        coeffs = [parse_rational(c) for c in x]
        if len(coeffs) > K.degree:
            raise DocumentError(f"{len(coeffs)} coefficients for Q(zeta_{order}) of degree {K.degree}")
        return K.from_coeffs(coeffs)
    return K(parse_rational(x))


def format_scalar(x):
    if isinstance(x, CycloScalar):
        if not any(x.c[1:]):
            return format_rational(x.c[0])
        return [format_rational(c) for c in x.c]
    return format_rational(x)


def format_vector(v) -> list:
    return [format_scalar(x) for x in v]


# -- datum documents -----------------------------------------------------------------
def _int_matrix(rows, name: str, n: int) -> list[list[int]]:
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise DocumentError(f"{name} must be a {n}x{n} matrix")
    out = []
    for r in rows:
        row = []
        for x in r:
            q = parse_rational(x)
            if q.denominator != 1:
                raise DocumentError(f"{name} entry {x!r} is not an integer")
            row.append(int(q))
        out.append(row)
    return out


def datum_from_dict(doc: dict) -> DegenerationDatum:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("rank", "monodromy", "polarization", "hodge_filtration"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    n = doc["rank"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError("rank must be a positive integer")
    order = doc.get("order", 1)
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise DocumentError("order must be a positive integer")
    T = _int_matrix(doc["monodromy"], "monodromy", n)
    S = _int_matrix(doc["polarization"], "polarization", n)
    hf = doc["hodge_filtration"]
    if not isinstance(hf, dict):
        raise DocumentError("hodge_filtration must map levels to lists of vectors")
    hodge = {}
    for p, vecs in hf.items():
        try:
            level = int(p)
        except ValueError:
            raise DocumentError(f"Hodge level {p!r} is not an integer") from None
        if not isinstance(vecs, list):
            raise DocumentError(f"F^{p} must be a list of vectors")
        rows = []
        for v in vecs:
            if not isinstance(v, list) or len(v) != n:
                raise DocumentError(f"F^{p} vector {v!r} does not have length {n}")
            rows.append([parse_scalar(x, order) for x in v])
        hodge[level] = rows
    window = doc.get("window")
    if window is not None and (not isinstance(window, int) or isinstance(window, bool) or window < 1):
        raise DocumentError("window must be a positive integer")
    return DegenerationDatum.build(T, S, hodge, order=order, name=str(doc.get("name", "")), window=window)


def datum_to_dict(d: DegenerationDatum) -> dict:
    return {
        "name": d.name,
        "rank": d.rank,
        "order": d.order,
        "monodromy": [list(r) for r in d.T],
        "polarization": [list(r) for r in d.S],
        "hodge_filtration": {str(p): [format_vector(v) for v in vecs] for p, vecs in d.hodge},
        "window": d.window,
    }


def load_datum(path: str) -> DegenerationDatum:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return datum_from_dict(doc)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- reports ---------------------------------------------------------------------------
@dataclass
class ReportDocument:
    validation: dict
    spectral: dict
    neron: dict
    provenance: dict

    def to_json(self) -> str:
        return dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        return cls(**{k: data[k] for k in ("validation", "spectral", "neron", "provenance")})


def validation_section(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks],
    }


def jordan_type(N) -> list[int]:
    n = len(N)
    ranks = [n]
    P = N
    while ranks[-1]:
        ranks.append(rank(P) if P else 0)
        P = matmul(P, N)
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]  # blocks of size >= k
    sizes = []
    for k in range(len(ge), 0, -1):
        nxt = ge[k] if k < len(ge) else 0
        sizes += [k] * (ge[k - 1] - nxt)
    return sizes


def spectral_section(d: DegenerationDatum) -> dict:
    W = d.weight_filtration
    return {
        "m": d.m,
        "field_order": d.order,
        "classes": [{"alpha": format_rational(c.alpha), "eigenvalue": format_scalar(c.eigenvalue), "dim": c.dim} for c in d.eigenclasses],
        "jordan_type": jordan_type(d.N),
        "N": [[format_rational(x) for x in row] for row in d.N],
        "weight_graded_dims": {str(k): W.graded_dim(k) for k in W.weights},
        "hodge_numbers": {str(p): h for p, h in d.hodge_numbers().items()},
    }


def _subspace(V: Subspace) -> list:
    return [format_vector(b) for b in V.basis]


def _fiber(f) -> dict | None:
    if f is None:
        return None
    return {
        "indices": list(f.indices),
        "pieces": [
            {"alpha": format_rational(a), "level": j, "preimage_basis": _subspace(V)}
            for (a, j), V in sorted(f.pieces.items())
        ],
    }


def neron_section(r) -> dict:
    if r.error:
        return {"error": r.error}
    basis = [
        {"index": i + 1, "alpha": format_rational(v.alpha), "level": v.level, "vector": format_vector(v.vector), "divisor": v.divisor}
        for i, v in enumerate(r.basis.vectors)
    ]
    return {
        "rank": r.rank,
        "d": list(r.d),
        "a": r.a,
        "a_closed_form": r.a_closed,
        "divisors": r.divisors,
        "m": r.m,
        "two_paths_agree": r.two_paths_agree,
        "grV_quotient_dims": {format_rational(k): v for k, v in r.grV.items()},
        "steps": [
            {
                "k": s.k,
                "m_k": s.m_k,
                "d_k": s.d_k,
                "center_codim": s.center_codim,
                "center_dim": s.center_dim,
                "fiber_dim": s.fiber_dim,
                "center_equations": [f"x{i}^({s.k - 1}) = 0" for i in s.center_equations] + ["t = 0"],
                "transition": [
                    f"x{i}^({s.k - 1}) = t*x{i}^({s.k})" if mult else f"x{i}^({s.k - 1}) = x{i}^({s.k})" for i, mult in s.transition
                ],
            }
            for s in r.steps
        ],
        "adapted_basis": basis,
        "image_fiber": _fiber(r.image_fiber),
        "ker_n_fiber": _fiber(r.ker_n_fiber),
        "center_is_ker_n_image": r.center_is_ker_n,
        "image_identity": r.image_identity,
        "image_identity_dims": list(r.image_identity_dims),
        "gamma_regular": r.gamma_regular,
        "gamma_rank": r.gamma_rank,
        "component_group": r.component_group,
        "classification": r.classification,
        "identities": dict(r.identities),
        "notes": list(r.notes),
    }


def report_document(r) -> ReportDocument:
    d = r.datum
    spectral = spectral_section(d) if r.validation["quasi-unipotent"].ok else {}
    return ReportDocument(
        validation=validation_section(r.validation),
        spectral=spectral,
        neron=neron_section(r),
        provenance={
            "datum": d.name,
            "window": r.window,
            "validity": f"valid up to t-order {r.window}" if r.window else "not analysed",
            "tool": "neronlat",
            "version": __version__,
        },
    )
