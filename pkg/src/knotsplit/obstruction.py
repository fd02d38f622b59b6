"""Linear-independence certificates for cyclotomic satellite knots.

A satellite ``K_k`` (``k`` in T) is modeled by its invariants only: the
Alexander module ``Lambda/(Phi_k^2)`` with the axis class as generator, and a
companion whose rho-value is either computed from a Seifert matrix or kept as
a formal symbol.  For ``x`` in the reduced block ``(Phi_k)`` the rho-value of
the associated representation is ``eps * rho(J)`` with ``eps = [x != 0]``;
this is taken as an axiom of the descriptor.
"""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from typing import Optional, Union

from .blanchfield import balanced_numerator, diagonal_form
from .lambda_ring import ONE, ZERO, cyclotomic, gcd_bezout, is_in_T, poly_gcd, monic_normalize
from .module import DirectSum, LambdaModule, Submodule, scalar_action
from .rho import RhoValue
from .seifert import SeifertMatrix, arf_invariant, rho_integral
from .splitting import split_submodule

__all__ = [
    "RhoValue",
    "Verdict",
    "SatelliteKnot",
    "LinearCombination",
    "CertificateReport",
    "companion_rho",
    "rho_of_element",
    "reduce_to_phi_block",
    "independence_certificate",
    "family_independence",
]

SOLVABILITY_ASSUMPTION = "each K_k (k in T) is (1)-solvable; recorded, not verified"
RHO_AXIOM = "rho(K_k, phi_x) = eps * rho(J) for x in (Phi_k), eps = [x != 0]; encoded as an axiom"
UNIVERSAL = "universal argument: any nonzero self-annihilating P1 contains a nonzero reduced element"

# Sample splitting runs only below this total rank; larger inputs get the
# Bezout certificate alone.
SPLIT_SAMPLE_MAX_RANK = 6


class Verdict(str, enum.Enum):
    OBSTRUCTED = "Obstructed"
    NOT_APPLICABLE = "NotApplicable"
    VANISHES = "Vanishes"


class CoprimalityError(ValueError):
    pass


# -- companion rho memo ---------------------------------------------------------

_MEMO: dict = {}
_MEMO_LOCK = threading.Lock()


def companion_rho(V, precision=50):
    key = (V, precision)
    with _MEMO_LOCK:
        hit = _MEMO.get(key)
    if hit is None:
        hit = RhoValue.from_integral(rho_integral(V, precision))
        with _MEMO_LOCK:
            hit = _MEMO.setdefault(key, hit)
    return hit


# -- descriptors --------------------------------------------------------------

@dataclass(frozen=True)
class SatelliteKnot:
    k: int
    companion: Union[SeifertMatrix, str]
    name: Optional[str] = None

    def __post_init__(self):
        if not is_in_T(self.k):
            raise ValueError(f"k = {self.k} is not in T (needs three distinct prime divisors)")
        if not isinstance(self.companion, (SeifertMatrix, str)):
            raise TypeError("companion must be a SeifertMatrix or a symbol name")
        if self.name is None:
            object.__setattr__(self, "name", f"K_{self.k}({self.companion_label})")

    @property
    def phi(self):
        return cyclotomic(self.k)

    @property
    def pattern_module(self):
        return LambdaModule([self.phi ** 2])

    @property
    def axis_class(self):
        return self.pattern_module.gen(0)

    @property
    def symbolic(self):
        return isinstance(self.companion, str)

    @property
    def companion_label(self):
        c = self.companion
        if isinstance(c, str):
            return c
        return c.name or "V" + str([list(r) for r in c.entries])

    def companion_rho(self, precision=50):
        if self.symbolic:
            return RhoValue.symbol(self.companion)
        return companion_rho(self.companion, precision)

    def to_json(self):
        c = {"symbol": self.companion} if self.symbolic else self.companion.to_json()
        return {"k": self.k, "name": self.name, "companion": c}


@dataclass
class LinearCombination:
    terms: list

    def merged(self):
        """Coefficients summed per ``(k, companion)``; zero terms dropped; sorted by ``k``."""
        acc, knots = {}, {}
        for a, K in self.terms:
            key = (K.k, K.companion_label)
            acc[key] = acc.get(key, 0) + int(a)
            knots.setdefault(key, K)
        return [(acc[key], knots[key]) for key in sorted(acc) if acc[key]]

    def to_json(self):
        return [{"a": a, **K.to_json()} for a, K in self.terms]


@dataclass
class CertificateReport:
    verdict: Verdict
    witness: Optional[dict] = None
    trace: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)
    preconditions: dict = field(default_factory=dict)
    reason: Optional[str] = None

    def __post_init__(self):
        if self.verdict is Verdict.OBSTRUCTED:
            if not self.witness or not self.witness["rho"].certainly_nonzero():
                raise ValueError("obstructed verdict needs a nonzero witness")

    def to_json(self):
        w = None
        if self.witness:
            w = {
                "k": self.witness["k"],
                "element": self.witness["element"].to_json(),
                "rho": self.witness["rho"].to_json(),
                "rho_str": str(self.witness["rho"]),
            }
        return {
            "verdict": self.verdict.value,
            "witness": w,
            "reason": self.reason,
            "preconditions": self.preconditions,
            "trace": self.trace,
            "assumptions": self.assumptions,
        }


# -- elementwise operations ---------------------------------------------------------

def rho_of_element(K, x, precision=50):
    if x.module != K.pattern_module:
        raise ValueError("element is not in the pattern module of the knot")
    if not K.phi.divides(x.coords[0]):
        raise ValueError("element outside reduced case; apply phi-multiplication first")
    if x.is_zero():
        return RhoValue.zero()
    return K.companion_rho(precision)


def _block_prime(M):
    d = M.factors[0]
    if any(f != d for f in M.factors):
        raise ValueError("module is not a sum of copies of one cyclic factor")
    p = monic_normalize(poly_gcd(d, d.derivative()))
    if p.span == 0 or p * p != d:
        raise ValueError("cyclic factor is not the square of a squarefree polynomial")
    return p


def reduce_to_phi_block(x, p=None):
    """``x`` if every coordinate lies in ``(p)``, otherwise ``p * x`` (nonzero)."""
    if x.is_zero():
        raise ValueError("cannot reduce the zero element")
    p = p or _block_prime(x.module)
    if all(p.divides(c) for c in x.coords):
        return x
    y = scalar_action(p, x)
    assert not y.is_zero()
    return y


# -- certificates ---------------------------------------------------------------

def _preconditions(K, precision):
    """``(ok, record)`` for Arf(J) = 0 and rho(J) != 0."""
    if K.symbolic:
        return True, {"companion": K.companion_label, "arf": "assumed 0", "rho": "assumed nonzero (symbol)"}
    arf = arf_invariant(K.companion)
    rho = K.companion_rho(precision)
    rec = {"companion": K.companion_label, "arf": arf, "rho": rho.to_json()}
    return arf == 0 and rho.certainly_nonzero(), rec


def _block_form(k, rank):
    phi2 = cyclotomic(k) ** 2
    c = balanced_numerator(phi2)
    return diagonal_form([(phi2, c)] * rank)


def _splitting_step(k, blocks, trace):
    """Bezout certificate for the ``k``-block against the rest, plus a sample split."""
    ranks = {kk: sum(abs(a) for a, _ in ts) for kk, ts in blocks.items()}
    mine = cyclotomic(k) ** 2
    rest = ONE
    for kk in ranks:
        if kk != k:
            rest = rest * cyclotomic(kk) ** 2
    g, f, h = gcd_bezout(mine, rest)
    step = {
        "step": "splitting reduction",
        "block": k,
        "bezout_gcd_is_one": g == ONE and f * mine + h * rest == ONE,
    }
    if g != ONE:
        raise CoprimalityError("coprimality hypothesis violated")
    if len(ranks) > 1 and sum(ranks.values()) <= SPLIT_SAMPLE_MAX_RANK:
        B1 = _block_form(k, ranks[k])
        others = [kk for kk in sorted(ranks) if kk != k]
        pairs = []
        for kk in others:
            phi2 = cyclotomic(kk) ** 2
            pairs += [(phi2, balanced_numerator(phi2))] * ranks[kk]
        B2 = diagonal_form(pairs)
        M = DirectSum([B1.ambient, B2.ambient])
        primes = [cyclotomic(k)] * ranks[k] + [monic_normalize(poly_gcd(d, d.derivative())) for d, _ in pairs]
        gens = [M.element([p if j == i else ZERO for j in range(M.rank)]) for i, p in enumerate(primes)]
        res = split_submodule(B1, B2, Submodule(M, gens))
        step["sample_split"] = {k2: v for k2, v in res.checks.items()}
    trace.append(step)


def _tally_block(k, terms, precision, trace):
    """Witness for a nonzero block, or ``(None, reason)``."""
    rank = sum(abs(a) for a, _ in terms)
    # coordinate j of the block belongs to term owner[j] with sign signs[j]
    owner, signs = [], []
    for idx, (a, _) in enumerate(terms):
        owner += [idx] * abs(a)
        signs += [1 if a > 0 else -1] * abs(a)
    if terms[0][0] < 0:
        trace.append({"step": "sign normalization", "detail": f"replace K_{k} by -K_{k}; rho contributions negate"})
    M = LambdaModule([cyclotomic(k) ** 2] * rank)
    sample = M.gen(0)
    reduced = reduce_to_phi_block(sample)
    trace.append({
        "step": "phi-multiplication",
        "input": sample.to_json(),
        "output": reduced.to_json(),
        "nonzero": not reduced.is_zero(),
    })
    contribs = [signs[owner.index(i)] * terms[i][1].companion_rho(precision) for i in range(len(terms))]
    symbolic = [terms[i][1].symbolic for i in range(len(terms))]
    if any(symbolic) and not all(symbolic):
        return None, "block mixes numeric and symbolic companions"
    if all(symbolic):
        coherent = True
        argument = "distinct symbols are Z-independent, so any nonempty eps-tally is nonzero"
    else:
        coherent = all(c.lo > 0 for c in contribs) or all(c.hi < 0 for c in contribs)
        argument = "all eps_j in {0,1} and all rho terms share one sign, so rho(J) + sum eps_j rho(J) != 0"
    trace.append({
        "step": "eps-tally",
        "label": UNIVERSAL,
        "argument": argument,
        "sign_coherent": coherent,
        "bound": f"1 <= sum eps_j <= {rank}",
    })
    if not coherent:
        return None, "rho contributions in the block are not sign-coherent"
    rho = RhoValue.zero()
    for j, c in enumerate(reduced.coords):
        K = terms[owner[j]][1]
        x = K.pattern_module.element([c])
        rho = rho + signs[j] * rho_of_element(K, x, precision)
    return {"k": k, "element": reduced, "rho": rho}, None


def _certify(L, precision, single_companion):
    terms = L.merged()
    trace = [{"step": "merge", "terms": [[a, K.name] for a, K in terms]}]
    assumptions = [SOLVABILITY_ASSUMPTION, RHO_AXIOM]
    if not terms:
        return CertificateReport(Verdict.VANISHES, trace=trace, assumptions=assumptions,
                                 reason="all coefficients vanish")
    blocks = {}
    for a, K in terms:
        blocks.setdefault(K.k, []).append((a, K))
    if single_companion:
        for k, ts in blocks.items():
            if len(ts) > 1:
                raise CoprimalityError(f"coprimality hypothesis violated: k = {k} occurs with distinct companions")
    pre, ok = {}, True
    for _, K in terms:
        good, rec = _preconditions(K, precision)
        pre[K.name] = rec
        ok = ok and good
    if any(K.symbolic for _, K in terms):
        assumptions.append("symbolic companions: Arf(J_i) = 0 and rho(J_i) Z-independent")
    if not ok:
        return CertificateReport(Verdict.NOT_APPLICABLE, trace=trace, assumptions=assumptions, preconditions=pre,
                                 reason="companion needs Arf = 0 and rho != 0")
    reasons = []
    for k in sorted(blocks):
        _splitting_step(k, blocks, trace)
        witness, why = _tally_block(k, blocks[k], precision, trace)
        if witness is not None:
            return CertificateReport(Verdict.OBSTRUCTED, witness, trace, assumptions, pre)
        reasons.append(f"k = {k}: {why}")
    return CertificateReport(Verdict.NOT_APPLICABLE, trace=trace, assumptions=assumptions, preconditions=pre,
                             reason="; ".join(reasons))


def independence_certificate(L, precision=50):
    """Certificate that ``L`` is nonzero modulo the next filtration level.

    Distinct ``k`` give pairwise coprime ``Phi_k``; a repeated ``k`` with
    different companions is rejected.
    """
    return _certify(L, precision, single_companion=True)


def family_independence(L, precision=50):
    """As :func:`independence_certificate`, allowing several companions per ``k``."""
    return _certify(L, precision, single_companion=False)
