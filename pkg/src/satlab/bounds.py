"""Closed-form saturation bounds and the k-independence number.

Formula values are exact :class:`~fractions.Fraction` objects; entries that
involve a logarithm are floats.  Asymptotic bounds are reported as a
leading constant per vertex (``constant``) together with ``value`` at the
given n, with the o(n) slack dropped and ``asymptotic=True``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .graph import Graph, VertexSet
from .independence import max_k_independent
from .pattern import Pattern, PatternError, as_pattern, layered_upper_constant


class BoundHypothesisError(ValueError):
    """Arguments fall outside the range where the formula is valid."""


def to_fraction(p: float | str | Fraction) -> Fraction:
    """Exact rational for a probability; floats go through their shortest repr."""
    if isinstance(p, Fraction):
        return p
    if isinstance(p, int):
        return Fraction(p)
    return Fraction(str(p))


def log_base(x: float, base: float) -> float:
    return math.log(x) / math.log(base)


# -------------------------------------------------------- complete hosts

def ehm_value(n: int, r: int) -> int:
    """sat(n, K_r) = (r-2)n - C(r-1, 2) for n >= r >= 2."""
    if not n >= r >= 2:
        raise BoundHypothesisError(f"need n >= r >= 2, got n={n}, r={r}")
    return (r - 2) * n - comb(r - 1, 2)


def kt_star_value(n: int, t: int) -> int:
    """sat(n, K_{1,t}): C(t,2) + C(n-t,2) when n <= 3t/2, else ceil((t-1)n/2 - t^2/8)."""
    if not (t >= 1 and n >= t + 1):
        raise BoundHypothesisError(f"need n >= t+1 >= 2, got n={n}, t={t}")
    if 2 * n <= 3 * t:
        return comb(t, 2) + comb(n - t, 2)
    return math.ceil(Fraction(t - 1, 2) * n - Fraction(t * t, 8))


def kt_general_constant(f: Pattern | str) -> Fraction:
    pat = as_pattern(f)
    return Fraction(2 * pat.kt_b + pat.kt_d - 1, 2)


def kt_general_upper(n: int, f: Pattern | str) -> Fraction:
    """(2b + d - 1)/2 * n - b(b + d)/2 from a maximum independent set S of F,
    with b = |V(F)| - |S| - 1 and d = min over x outside S of |N(x) ∩ S|."""
    pat = as_pattern(f)
    b, d = pat.kt_b, pat.kt_d
    return Fraction(2 * b + d - 1, 2) * n - Fraction(b * (b + d), 2)


# ---------------------------------------------------------- random hosts

def random_upper_constant(p: float | Fraction, f: Pattern | str) -> Fraction:
    """Leading constant of the layered upper bound on sat(G(n,p), F).

    Star forests (a = 1) route to (t_k - 1)/2, t_k the smallest star.
    """
    pat = as_pattern(f)
    pf = to_fraction(p)
    if not 0 < pf <= 1:
        raise BoundHypothesisError("p must lie in (0, 1]")
    if pat.star_degrees is not None:
        return Fraction(pat.star_degrees[-1] - 1, 2)
    if not pat.bipartite:
        raise BoundHypothesisError("pattern is not bipartite")
    if pat.has_isolated:
        raise BoundHypothesisError("pattern has isolated vertices")
    from .pattern import analyze_bipartition

    ba = analyze_bipartition(pat.graph, pf)
    return layered_upper_constant(ba.a, ba.delta, pf)


def random_upper_value(n: int, p: float | Fraction, f: Pattern | str) -> Fraction:
    return random_upper_constant(p, f) * n


def _check_st(s: int, t: int) -> None:
    if not t >= s >= 2:
        raise BoundHypothesisError(f"need t >= s >= 2, got s={s}, t={t}")


def kst_lower_constant(p: float | Fraction, s: int, t: int) -> Fraction:
    """max{(2s+t-3)/2, (t-s)/(4 p^(s-1)) + (s-1)/2}."""
    _check_st(s, t)
    pf = to_fraction(p)
    return max(
        Fraction(2 * s + t - 3, 2),
        Fraction(t - s, 4) / pf ** (s - 1) + Fraction(s - 1, 2),
    )


def kst_lower_value(n: int, p: float | Fraction, s: int, t: int) -> Fraction:
    return kst_lower_constant(p, s, t) * n


def kst_remark_constant(p: float | Fraction, s: int, t: int) -> Fraction:
    """(t-s)/(4 p^(s-1)) + s - 1, a sharper constant stated without proof."""
    _check_st(s, t)
    pf = to_fraction(p)
    return Fraction(t - s, 4) / pf ** (s - 1) + (s - 1)


def weight_lower_constant(f: Pattern | str) -> Fraction:
    """(w(F) - 1)/2; the O(log n) correction is not quantified."""
    pat = as_pattern(f)
    if pat.w_value is None:
        raise BoundHypothesisError("pattern has no edges")
    return Fraction(pat.w_value - 1, 2)


def corollary_lower_value(n: int, p: float, f: Pattern | str) -> float:
    """(r-1)/2 * n - (r-1) * log_{1/(1-p)} n."""
    pat = as_pattern(f)
    if pat.r_value is None:
        raise BoundHypothesisError("pattern has no edges")
    r = pat.r_value
    if r == 1:
        return 0.0
    if not 0 < p < 1:
        raise BoundHypothesisError("p must lie in (0, 1)")
    return (r - 1) / 2 * n - (r - 1) * log_base(n, 1 / (1 - p))


def alpha_concentration_target(n: int, p: float, k: int = 0) -> float:
    """2 log_{1/(1-p)} n, the centre of α_k(G(n,p)) for every fixed k."""
    if not 0 < p < 1:
        raise BoundHypothesisError("p must lie in (0, 1)")
    return 2 * log_base(n, 1 / (1 - p))


# ----------------------------------------------------- graph-dependent

@dataclass(frozen=True)
class AlphaResult:
    value: int
    exact: bool
    members: VertexSet
    nodes: int


def alpha_k(g: Graph, k: int, budget: int | None = None) -> AlphaResult:
    """Largest vertex set inducing maximum degree <= k.

    With a ``budget`` the search may stop early; then ``exact`` is False and
    ``value`` is only a lower bound on α_k.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k >= g.max_degree():
        return AlphaResult(g.n, True, VertexSet.full(g.n), 0)
    res = max_k_independent(g.rows, k, budget=budget)
    return AlphaResult(res.size, res.exact, VertexSet(g.n, res.members), res.nodes)


def anyg_lower(g: Graph, f: Pattern | str, budget: int | None = None) -> Fraction | None:
    """(r-1)(n - α_{r-2}(g))/2, valid for every host g when r(F) >= 2.

    Returns None (inconclusive) when α could not be computed exactly: a
    truncated α underestimates the true value and would overstate the bound.
    """
    pat = as_pattern(f)
    r = pat.r_value
    if r is None or r < 2:
        raise BoundHypothesisError("the independence bound needs r(F) >= 2")
    res = alpha_k(g, r - 2, budget)
    if not res.exact:
        return None
    return Fraction((r - 1) * (g.n - res.value), 2)


# ----------------------------------------------------------------- report

@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str  # "exact" | "lower" | "upper"
    host: str  # "complete" | "random"
    value: Fraction | float | None
    constant: Fraction | float | None
    asymptotic: bool
    source: str
    note: str = ""

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        out = {
            "name": self.name,
            "kind": self.kind,
            "host": self.host,
            "value": num(self.value),
            "constant": num(self.constant),
            "asymptotic": self.asymptotic,
            "source": self.source,
        }
        if isinstance(self.constant, Fraction):
            out["constant_exact"] = str(self.constant)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class BoundReport:
    pattern: str
    n: int
    p: float
    entries: list[BoundEntry] = field(default_factory=list)

    def get(self, name: str) -> BoundEntry | None:
        return next((e for e in self.entries if e.name == name), None)

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "n": self.n,
            "p": self.p,
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_text(self) -> str:
        head = ("name", "kind", "host", "value", "per n", "asym", "source")
        rows = [head]
        for e in self.entries:
            rows.append((
                e.name,
                e.kind,
                e.host,
                "-" if e.value is None else f"{float(e.value):.4f}",
                "-" if e.constant is None else f"{float(e.constant):.4f}",
                "yes" if e.asymptotic else "no",
                e.source,
            ))
        widths = [max(len(r[i]) for r in rows) for i in range(len(head))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return f"pattern {self.pattern}  n={self.n}  p={self.p}\n" + "\n".join(lines)


def bound_report(f: Pattern | str, n: int, p: float) -> BoundReport:
    """Every bound that applies to F at (n, p)."""
    pat = as_pattern(f)
    rep = BoundReport(pat.source or repr(pat), n, p)
    add = rep.entries.append
    if pat.is_clique and n >= pat.order >= 2:
        r = pat.order
        add(BoundEntry("ehm", "exact", "complete", Fraction(ehm_value(n, r)), Fraction(r - 2),
                       False, "clique saturation in K_n (Erdős–Hajnal–Moon)"))
    if pat.is_star and n >= pat.star_degrees[0] + 1:
        t = pat.star_degrees[0]
        add(BoundEntry("kt_star", "exact", "complete", Fraction(kt_star_value(n, t)),
                       Fraction(t - 1, 2), False, "star saturation in K_n (Kászonyi–Tuza)"))
    if pat.size and n >= pat.order:
        add(BoundEntry("kt_general_upper", "upper", "complete", kt_general_upper(n, pat),
                       kt_general_constant(pat), False,
                       "independent-set construction in K_n (Kászonyi–Tuza)"))
    if not 0 < p < 1:
        return rep
    pf = to_fraction(p)
    if pat.star_degrees is not None:
        tk = pat.star_degrees[-1]
        c = Fraction(tk - 1, 2)
        add(BoundEntry("random_upper", "upper", "random", c * n, c, True,
                       "star-forest construction in G(n,p)"))
        add(BoundEntry("star_forest", "exact", "random",
                       (tk - 1) / 2 * n - (tk - 1) * log_base(n, 1 / (1 - p)), c, True,
                       "star forests in G(n,p), two-sided"))
    elif pat.bipartite and not pat.has_isolated:
        c = random_upper_constant(pf, pat)
        add(BoundEntry("random_upper", "upper", "random", c * n, c, True,
                       "layered construction for bipartite F in G(n,p)"))
    if any(len(comp) == 2 for comp in pat.components):
        v = Fraction(comb(pat.order - 1, 2))
        add(BoundEntry("k2_component_upper", "upper", "random", v, Fraction(0), True,
                       "pattern with a K_2 component in G(n,p)"))
    if pat.kst is not None and pat.kst[0] >= 2:
        s, t = pat.kst
        c = kst_lower_constant(pf, s, t)
        add(BoundEntry("kst_lower", "lower", "random", c * n, c, True,
                       "K_{s,t} lower bound in G(n,p)"))
        c2 = kst_remark_constant(pf, s, t)
        add(BoundEntry("kst_lower_remark", "lower", "random", c2 * n, c2, True,
                       "sharper K_{s,t} lower constant", note="stated without proof"))
    if pat.r_value is not None:
        r = pat.r_value
        add(BoundEntry("corollary_lower", "lower", "random", corollary_lower_value(n, p, pat),
                       Fraction(r - 1, 2), True, "min-degree / k-independence bound in G(n,p)"))
        c = weight_lower_constant(pat)
        add(BoundEntry("weight_lower", "lower", "random", c * n, c, True,
                       "edge-weight bound in G(n,p)", note="O(log n) correction dropped"))
    return rep


__all__ = [
    "AlphaResult",
    "BoundEntry",
    "BoundHypothesisError",
    "BoundReport",
    "PatternError",
    "alpha_concentration_target",
    "alpha_k",
    "anyg_lower",
    "bound_report",
    "corollary_lower_value",
    "ehm_value",
    "kst_lower_constant",
    "kst_lower_value",
    "kst_remark_constant",
    "kt_general_constant",
    "kt_general_upper",
    "kt_star_value",
    "random_upper_constant",
    "random_upper_value",
    "weight_lower_constant",
]
