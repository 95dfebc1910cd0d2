"""Decide semigroup properties of <D> from the digraph D alone, without enumeration.

Every verdict is True, False or None (not applicable: the graph-theoretic rule
needs hypotheses the input does not meet, e.g. connectedness). Each verdict
names the rule that produced it and carries a small JSON-friendly witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .digraph import (
    Digraph,
    closure,
    find_cycle,
    is_directed_bipartite,
    is_fan,
    nontrivial_components,
    strong_components,
    terminal_components,
)
from .families import CONGRUENCE_FREE, ZERO_SIMPLE
from .isomorphism import is_isomorphic

PROPERTIES = (
    "h_trivial",
    "aperiodic",
    "r_trivial",
    "l_trivial",
    "j_trivial",
    "band",
    "completely_regular",
    "regular",
    "inverse",
    "commutative",
    "semilattice",
    "has_left_zero",
    "has_right_zero",
    "has_zero",
    "left_zero_semigroup",
    "right_zero_semigroup",
    "trivial",
    "group",
    "simple",
    "rectangular_band",
    "zero_simple",
    "congruence_free",
)


@dataclass(frozen=True)
class Verdict:
    verdict: bool | None
    proposition: str
    witness: Any = None

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "proposition": self.proposition, "witness": self.witness}


@dataclass
class PropertyReport:
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    predicted_size: int | None = None

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def flags(self) -> dict[str, bool | None]:
        return {k: self.verdicts[k].verdict for k in PROPERTIES}

    def applicable(self) -> dict[str, bool]:
        return {k: v for k, v in self.flags().items() if v is not None}

    def to_dict(self) -> dict:
        out = {k: self.verdicts[k].to_dict() for k in PROPERTIES}
        return {"properties": out, "predicted_size": self.predicted_size}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, doc: dict) -> PropertyReport:
        verdicts = {k: Verdict(v["verdict"], v["proposition"], v["witness"]) for k, v in doc["properties"].items()}
        return cls(verdicts, doc.get("predicted_size"))


def _sorted_arcs(D: Digraph, labels=None) -> list[list[int]]:
    if labels is None:
        return [list(a) for a in D.sorted_arcs()]
    return sorted([labels[u - 1], labels[v - 1]] for u, v in D.arcs)


def _is_path_graph(C: Digraph) -> bool:
    """Symmetric, connected and with the degree sequence of a path (1 or 2 vertices always pass)."""
    n = C.n
    if n <= 2:
        return True
    degs = [C.out_degree(v) for v in C.vertices]
    return C.num_arcs == 2 * (n - 1) and degs.count(1) == 2 and degs.count(2) == n - 2


# -- Green's relations -------------------------------------------------------------


def greens_triviality(D: Digraph) -> dict[str, Verdict]:
    comps = strong_components(D)
    Dc = closure(D)
    bad = None
    for c in comps:
        if len(c) > 2:
            sub, _ = Dc.induced(c)
            if not _is_path_graph(sub):
                bad = list(c)
                break
    h = Verdict(bad is None, "every strong component of the closure is a path", bad)

    cycle = find_cycle(D)
    r = Verdict(cycle is None, "digraph is acyclic", cycle)

    heavy = next((v for v in D.vertices if D.out_degree(v) > 1), None)
    if heavy is not None:
        l_ = Verdict(False, "out-degree at most 1 and no cycle longer than 2",
                     {"vertex": heavy, "out_neighbors": list(D.out_neighbors(heavy))})
    else:
        # with out-degree <= 1 every strong component is a single cycle
        long_comp = next((list(c) for c in comps if len(c) > 2), None)
        l_ = Verdict(long_comp is None, "out-degree at most 1 and no cycle longer than 2",
                     None if long_comp is None else {"cycle": long_comp})

    if cycle is not None:
        j = Verdict(False, "acyclic with out-degree at most 1", {"cycle": cycle})
    elif heavy is not None:
        j = Verdict(False, "acyclic with out-degree at most 1",
                    {"vertex": heavy, "out_neighbors": list(D.out_neighbors(heavy))})
    else:
        j = Verdict(True, "acyclic with out-degree at most 1")

    return {"h_trivial": h, "aperiodic": Verdict(h.verdict, "aperiodic iff H-trivial (finite)", h.witness),
            "r_trivial": r, "l_trivial": l_, "j_trivial": j}


# -- regularity --------------------------------------------------------------------


def _bipartite_failure(comps) -> list | None:
    """First component on >= 3 vertices that is not directed-bipartite, as an arc list."""
    for C, labels in comps:
        if C.n >= 3 and not is_directed_bipartite(C)[0]:
            return _sorted_arcs(C, labels)
    return None


def regularity_family(D: Digraph) -> dict[str, Verdict]:
    comps = nontrivial_components(D)
    bad = _bipartite_failure(comps)
    band = Verdict(bad is None, "each component on 3+ vertices is directed-bipartite", bad)
    out = {"band": band, "completely_regular": Verdict(band.verdict, band.proposition, bad)}

    if find_cycle(D) is not None:
        out["regular"] = Verdict(None, "regularity rule covers acyclic digraphs only")
    else:
        out["regular"] = Verdict(bad is None, "acyclic; each component on 3+ vertices is directed-bipartite", bad)

    not_fan = None
    sinks = []
    for C, labels in comps:
        ok, z = is_fan(C)
        if not ok:
            not_fan = _sorted_arcs(C, labels)
            break
        sinks.append(labels[z - 1])
    w = not_fan if not_fan is not None else {"fan_sinks": sinks}
    rule = "every non-trivial component is a fan"
    for name in ("inverse", "commutative", "semilattice"):
        out[name] = Verdict(not_fan is None, rule, w)
    return out


# -- zeros ---------------------------------------------------------------------------


def _unique_component(D: Digraph):
    comps = nontrivial_components(D)
    return comps[0] if len(comps) == 1 else None


def zero_family(D: Digraph) -> dict[str, Verdict]:
    comps = nontrivial_components(D)
    out: dict[str, Verdict] = {}
    if len(comps) != 1:
        why = "zero rules need exactly one non-trivial component"
        for name in ("has_left_zero", "has_right_zero", "has_zero"):
            out[name] = Verdict(None, why, {"components": len(comps)})
        several = {"components": len(comps)}
        out["left_zero_semigroup"] = Verdict(False, "needs a unique non-trivial component", several)
        out["right_zero_semigroup"] = Verdict(False, "needs a unique non-trivial component", several)
        return out

    K, labels = comps[0]
    terms = [[labels[v - 1] for v in t] for t in terminal_components(K)]
    all_trivial = all(len(t) == 1 for t in terms)
    w = {"terminal_components": terms}
    out["has_left_zero"] = Verdict(all_trivial, "all terminal components are trivial", w)
    out["has_right_zero"] = Verdict(len(terms) == 1, "exactly one terminal component", w)
    has_zero = len(terms) == 1 and all_trivial
    wz = dict(w, zero_image=terms[0][0]) if has_zero else w
    out["has_zero"] = Verdict(has_zero, "exactly one terminal component and it is trivial", wz)

    rev_fan, centre = is_fan(K.reverse())
    out["left_zero_semigroup"] = Verdict(
        rev_fan, "reverse of the unique non-trivial component is a fan",
        {"centre": labels[centre - 1]} if rev_fan else {"component": _sorted_arcs(K, labels)},
    )
    out["right_zero_semigroup"] = Verdict(
        K.n == 2, "unique non-trivial component has 2 vertices", {"component_size": K.n}
    )
    return out


# -- simplicity ----------------------------------------------------------------------


def _catalog_match(D: Digraph, catalog) -> int | None:
    found = _unique_component(D)
    if found is None:
        return None
    K, _ = found
    for i, C in enumerate(catalog, start=1):
        if K.n == C.n and is_isomorphic(K, C):
            return i
    return None


def simplicity_family(D: Digraph, zeros: dict[str, Verdict] | None = None) -> dict[str, Verdict]:
    zeros = zero_family(D) if zeros is None else zeros
    out: dict[str, Verdict] = {}
    one = D.num_arcs == 1
    w = {"arcs": D.num_arcs}
    out["trivial"] = Verdict(one, "exactly one arc", w)
    out["group"] = Verdict(one, "exactly one arc", w)

    if zeros["has_zero"].verdict is None:  # zero family is only None when not connected
        for name in ("simple", "rectangular_band"):
            out[name] = Verdict(None, "simplicity rule needs exactly one non-trivial component")
    else:
        lz = zeros["left_zero_semigroup"].verdict
        rz = zeros["right_zero_semigroup"].verdict
        v = bool(lz or rz)
        wit = {"left_zero_semigroup": lz, "right_zero_semigroup": rz}
        out["simple"] = Verdict(v, "left-zero or right-zero semigroup", wit)
        out["rectangular_band"] = Verdict(v, "left-zero or right-zero semigroup", wit)

    zs = _catalog_match(D, ZERO_SIMPLE)
    out["zero_simple"] = Verdict(zs is not None, "unique non-trivial component is a 0-simple catalog digraph",
                                 {"catalog_index": zs})
    cf = _catalog_match(D, CONGRUENCE_FREE)
    out["congruence_free"] = Verdict(cf is not None,
                                     "unique non-trivial component is a congruence-free catalog digraph",
                                     {"catalog_index": cf})
    return out


def predicted_size(D: Digraph) -> int | None:
    """Size of <D> when every non-trivial component is a fan, else None."""
    comps = nontrivial_components(D)
    if not comps:
        return None
    total = 1
    for C, _ in comps:
        if not is_fan(C)[0]:
            return None
        total *= 2 ** (C.n - 1)
    return total - 1


def classify(D: Digraph) -> PropertyReport:
    """All verdicts for D in a fixed property order."""
    if D.num_arcs == 0:
        none = Verdict(None, "digraph has no arcs")
        return PropertyReport({k: none for k in PROPERTIES}, None)
    verdicts: dict[str, Verdict] = {}
    verdicts.update(greens_triviality(D))
    verdicts.update(regularity_family(D))
    zeros = zero_family(D)
    verdicts.update(zeros)
    verdicts.update(simplicity_family(D, zeros))
    return PropertyReport({k: verdicts[k] for k in PROPERTIES}, predicted_size(D))
