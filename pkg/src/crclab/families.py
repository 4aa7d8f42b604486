"""Constructors for the Kronecker, lifted and repetition-product code families.

Every constructor returns a :class:`Member` pairing the code with a
:class:`FamilySpec` listing the parameters the construction claims, so the
verifiers can check them independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, NamedTuple

import numpy as np

from .code import LinearCode, code_from_parity, lift
from .errors import BadParameters, SlowModeRequired
from .gf import field_create, gf, prime_power
from .linalg import hamming_matrix, kronecker, repetition_matrix
from .regularity import IntersectionArray, predicted_intersection_array

CT_UNVERIFIED = "asserted, unverified"


@dataclass
class FamilySpec:
    kind: str
    params: dict[str, Any]
    claims: dict[str, Any] = dc_field(default_factory=dict)

    def claimed_array(self) -> IntersectionArray | None:
        ia = self.claims.get("ia")
        if ia is None or isinstance(ia, IntersectionArray):
            return ia
        return IntersectionArray(ia["b"], ia["c"])

    def as_dict(self) -> dict:
        claims = dict(self.claims)
        if isinstance(claims.get("ia"), IntersectionArray):
            claims["ia"] = claims["ia"].as_dict()
        return {"kind": self.kind, "params": dict(self.params), "claims": claims}

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        return cls(d["kind"], dict(d["params"]), dict(d.get("claims", {})))


class Member(NamedTuple):
    code: LinearCode
    spec: FamilySpec


def hamming_length(Q: int, m: int) -> int:
    return (Q ** m - 1) // (Q - 1)


def _base_field(q: int):
    prime_power(q)
    return gf(q)


def _kronecker_member(q: int, u: int, m_big: int, m_small: int, big_side: str,
                      kind: str, extra: dict | None = None) -> Member:
    """``H_{m_big}^{q^u}`` and ``H_{m_small}^q`` multiplied in the given order."""
    small = _base_field(q)
    big = field_create(small.p, small.k * u)
    A = hamming_matrix(big, m_big)
    B = hamming_matrix(small, m_small)
    H = kronecker(A, B, big) if big_side == "left" else kronecker(B, A, big)
    params = {"q": q, "u": u, "m_big": m_big, "m_small": m_small, "big_side": big_side}
    code = code_from_parity(H, "kronecker", params)
    n = hamming_length(big.order, m_big) * hamming_length(q, m_small)
    k = n - m_big * m_small
    claims = {
        "field_order": big.order,
        "n": n,
        "k": k,
        "d": 3 if k > 0 and n >= 3 else None,
        "rho": min(u * m_big, m_small),
        "ia": predicted_intersection_array(q, u, m_big, m_small),
        "cr": True,
        "degenerate": m_big == 1 or m_small == 1,
        "complete_transitivity": CT_UNVERIFIED,
    }
    spec = FamilySpec(kind, {**params, **(extra or {})}, claims)
    return Member(code, spec)


def kronecker_code(q: int, u: int, m_a: int, m_b: int) -> Member:
    """``C(H_{m_a}^{q^u} (x) H_{m_b}^q)`` over ``F_{q^u}``."""
    if min(u, m_a, m_b) < 1:
        raise BadParameters("u, m_a, m_b must be >= 1")
    kind = "kronecker_same" if u == 1 else "kronecker_mixed"
    return _kronecker_member(q, u, m_a, m_b, "left", kind, {"m_a": m_a, "m_b": m_b})


def lifted_code(q: int, m: int, r: int) -> Member:
    """The ``q``-ary Hamming code of redundancy ``m`` lifted to ``F_{q^r}``."""
    if min(m, r) < 1:
        raise BadParameters("m and r must be >= 1")
    base = code_from_parity(hamming_matrix(_base_field(q), m), "hamming", {"q": q, "m": m})
    code = lift(base, r) if r > 1 else base
    if r == 1:
        code = code_from_parity(base.H, "lifted", {"q": q, "m": m, "r": 1})
    n = hamming_length(q, m)
    claims = {
        "field_order": q ** r,
        "n": n,
        "k": n - m,
        "d": 3 if n - m > 0 and n >= 3 else None,
        "rho": min(m, r),
        "ia": predicted_intersection_array(q, 1, m, r),
        "cr": True,
        "degenerate": m == 1,
    }
    return Member(code, FamilySpec("lifted", {"q": q, "m": m, "r": r}, claims))


def _with_common_claims(member: Member, ia: IntersectionArray, rho: int, kind: str,
                        item: str) -> Member:
    member.spec.kind = kind
    member.spec.params["item"] = item
    member.spec.claims["ia"] = ia
    member.spec.claims["rho"] = rho
    return member


def theorem_main_family(q: int, a: int, b: int, u: int) -> list[Member]:
    """The five codes sharing one intersection array with ``rho = min(ua, b)``.

    i) ``C_{ua}(H_b^q)``, ii) ``C_b(H_{ua}^q)``, iii) ``C(H_b^q (x) H_{ua}^q)``,
    iv) ``C(H_b^q (x) H_u^{q^a})``, v) ``C(H_b^q (x) H_a^{q^u})``.
    """
    if min(q, a, b, u) < 1:
        raise BadParameters("parameters must be natural numbers")
    ua = u * a
    ia = predicted_intersection_array(q, 1, b, ua)
    rho = min(ua, b)
    kind = "main_family"
    members = [
        _with_common_claims(lifted_code(q, b, ua), ia, rho, kind, "i"),
        _with_common_claims(lifted_code(q, ua, b), ia, rho, kind, "ii"),
        _with_common_claims(_kronecker_member(q, 1, b, ua, "left", kind), ia, rho, kind, "iii"),
        _with_common_claims(_kronecker_member(q, a, u, b, "right", kind), ia, rho, kind, "iv"),
        _with_common_claims(_kronecker_member(q, u, a, b, "right", kind), ia, rho, kind, "v"),
    ]
    return members


def code_key(code: LinearCode) -> tuple:
    """Deduplication key: field order, length and the sorted column multiset
    of the reduced parity-check matrix."""
    cols = sorted(tuple(int(x) for x in col) for col in code.Hr.data.T)
    return (code.Q, code.n, tuple(cols))


def distinct_members(members: list[Member]) -> list[Member]:
    seen, out = set(), []
    for mem in members:
        key = code_key(mem.code)
        if key not in seen:
            seen.add(key)
            out.append(mem)
    return out


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def corollary_family(q: int, a: int, b: int) -> list[Member]:
    """One code per divisor of ``a`` or ``b`` (plus two lifts), deduplicated."""
    if a <= 1 or b <= 1:
        raise BadParameters("corollary needs a, b > 1")
    ia = predicted_intersection_array(q, 1, a, b)
    rho = min(a, b)
    kind = "corollary_family"
    members = []
    for ai in _divisors(a):
        if ai != 1:
            mem = _kronecker_member(q, a // ai, ai, b, "left", kind)
            members.append(_with_common_claims(mem, ia, rho, kind, f"i:a_i={ai}"))
    for bi in _divisors(b):
        if bi != 1:
            mem = _kronecker_member(q, b // bi, bi, a, "right", kind)
            members.append(_with_common_claims(mem, ia, rho, kind, f"ii:b_i={bi}"))
    members.append(_with_common_claims(lifted_code(q, b, a), ia, rho, kind, "iii:C_a(H_b)"))
    members.append(_with_common_claims(lifted_code(q, a, b), ia, rho, kind, "iii:C_b(H_a)"))
    return distinct_members(members)


def up_family(q: int, u: int, m: int, n_b: int) -> Member:
    """``C(H_m^{q^u} (x) R_{n_b}^q)``: uniformly packed but not completely
    regular while ``4 <= n_b <= (q^u - 1) n_a + 1``.

    Past that bound the claims switch to ``rho = n_b - 2``, ``s = n_b - 1``
    (not uniformly packed).
    """
    if n_b < 4:
        raise BadParameters("repetition length must be at least 4")
    if m < 2 or u < 1:
        raise BadParameters("need m >= 2 and u >= 1")
    small = _base_field(q)
    big = field_create(small.p, small.k * u)
    H = kronecker(hamming_matrix(big, m), repetition_matrix(small, n_b), big)
    n_a = hamming_length(big.order, m)
    bound = (big.order - 1) * n_a + 1
    in_bound = n_b <= bound
    params = {"q": q, "u": u, "m": m, "n_b": n_b}
    code = code_from_parity(H, "repetition-product", params)
    n = n_a * n_b
    claims = {
        "field_order": big.order,
        "n": n,
        "k": n - m * (n_b - 1),
        "d": 3,
        "rho": n_b - 1 if in_bound else n_b - 2,
        "s": n_b - 1,
        "up": in_bound,
        "cr": False,
        "in_bound": in_bound,
        "degenerate": False,
    }
    return Member(code, FamilySpec("up_repetition", params, claims))


def remark_counterexample(slow: bool = False) -> Member:
    """The ``[45, 41, 3]`` code ``C(H_2^{F_4} (x) H_2^{F_8})`` over ``F_64``.

    Its 64^4 syndromes make verification slow, hence the explicit opt-in.
    """
    if not slow:
        raise SlowModeRequired("the F_64 counterexample needs slow mode")
    F4, F8, F64 = gf(4), gf(8), gf(64)
    H = kronecker(hamming_matrix(F4, 2), hamming_matrix(F8, 2), F64)
    code = code_from_parity(H, "kronecker-compositum", {"fields": [4, 8], "m_a": 2, "m_b": 2})
    claims = {"field_order": 64, "n": 45, "k": 41, "d": 3, "rho": 3, "s": 7,
              "up": False, "cr": False, "degenerate": False}
    return Member(code, FamilySpec("remark_counterexample", {}, claims))


def hamming_code(q: int, m: int) -> Member:
    code = code_from_parity(hamming_matrix(_base_field(q), m), "hamming", {"q": q, "m": m})
    n = hamming_length(q, m)
    claims = {"field_order": q, "n": n, "k": n - m, "d": 3, "rho": 1,
              "ia": IntersectionArray([n * (q - 1)], [1]), "cr": True, "degenerate": m == 1}
    return Member(code, FamilySpec("hamming", {"q": q, "m": m}, claims))


FAMILY_KINDS = ("kronecker", "lifted", "up", "remark", "hamming")


def build(kind: str, params: dict, slow: bool = True) -> Member:
    """Rebuild a single-code family member from its parameters."""
    if kind in ("kronecker", "kronecker_same", "kronecker_mixed"):
        return kronecker_code(params["q"], params.get("u", 1), params["m_a"], params["m_b"])
    if kind == "lifted":
        return lifted_code(params["q"], params["m"], params["r"])
    if kind in ("up", "up_repetition"):
        return up_family(params["q"], params.get("u", 1), params["m"], params["n_b"])
    if kind in ("remark", "remark_counterexample"):
        return remark_counterexample(slow=slow)
    if kind == "hamming":
        return hamming_code(params["q"], params["m"])
    raise BadParameters(f"unknown family {kind!r}")


def to_jsonable(x):
    if isinstance(x, dict):
        return {k: to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, IntersectionArray):
        return x.as_dict()
    if isinstance(x, np.integer):
        return int(x)
    return x
