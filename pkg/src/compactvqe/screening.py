"""Order-by-order MBPT screening of excitation operators.

The cascade is measurement-free and purely classical:

1. First order: double excitations (a,b,i,j) are kept when the magnitude of
   the first-order amplitude |<ab||ij>/Delta| exceeds eps1 and are ordered by
   descending magnitude.
2. Second order: two-body "scatterer" operators of net single-excitation rank
   (one contractible destruction index) are kept when |v_mu/Delta_mu| exceeds
   eps2 and the contractible index matches a retained double.  Each valid
   (scatterer, double) contraction is a pathway into a triple excitation; a
   triple is kept when the magnitude of its accumulated second-order
   amplitude exceeds eps3, and only its single strongest pathway is retained.
   Singles are screened from the same second-order expression with no
   scatterer filtering.
3. Optional third order: retained scatterers are chained onto retained
   triples to screen quadruple pathways, excluding eight-index tuples already
   simulated implicitly by blocks that carry more than one scatterer.

Pathway numerators are Slater-Condon matrix elements between the actual
determinants, so antisymmetrization signs and the cancellation between
competing pathways are exact.  All contributions sum every distinct Wick
contraction consistent with the target index tuple.

Denominators are bare orbital-energy differences: destruction minus creation
indices of the operator string (for a plain excitation this is the usual
sum(eps_occ) - sum(eps_virt)).  A denominator smaller than 1e-10 for a
candidate that would otherwise be retained raises DegeneracyError unless a
delta_floor is configured, in which case |Delta| is clamped to the floor.
"""

import json
import math
from dataclasses import dataclass, field

from .errors import DegeneracyError
from .fcidump import mp_denominator
from .slater import determinant_from_excitation, hf_determinant, matrix_element

__all__ = [
    "ScreeningConfig",
    "DoublesCandidate",
    "Scatterer",
    "TripleCandidate",
    "SinglesCandidate",
    "QuadruplePathway",
    "ScreeningLedger",
    "screen_doubles",
    "all_doubles",
    "mp2_energy",
    "build_orbital_tuple_set",
    "screen_scatterers",
    "screen_triples",
    "screen_singles",
    "screen_quadruples",
    "run_screening",
    "ledger_to_json",
]

DELTA_MIN = 1e-10


@dataclass(frozen=True)
class ScreeningConfig:
    """Thresholds and depth of the screening cascade.

    Reports use the naming convention compact(-log10 eps1, -log10 eps2,
    -log10 eps3).  eps_q defaults to eps3 when quadruples are enabled.
    """

    eps1: float
    eps2: float
    eps3: float
    max_order: int = 2
    include_quadruples: bool = False
    eps_q: float = None
    delta_floor: float = None

    def __post_init__(self):
        if min(self.eps1, self.eps2, self.eps3) <= 0:
            raise ValueError("all thresholds must be positive")
        if self.max_order not in (1, 2, 3):
            raise ValueError("max_order must be 1, 2 or 3")
        if self.eps_q is None:
            object.__setattr__(self, "eps_q", self.eps3)

    @property
    def label(self):
        def neg_log(x):
            return f"{-math.log10(x):g}"

        return f"compact({neg_log(self.eps1)},{neg_log(self.eps2)},{neg_log(self.eps3)})"


@dataclass(frozen=True)
class DoublesCandidate:
    """Screened double excitation; canonical order a < b, i < j."""

    a: int
    b: int
    i: int
    j: int
    v: float        # <ab||ij>
    delta: float    # eps_i + eps_j - eps_a - eps_b
    t1st: float     # v / delta

    @property
    def index(self):
        return (self.a, self.b, self.i, self.j)

    @property
    def holes(self):
        return (self.i, self.j)

    @property
    def particles(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class Scatterer:
    """Two-body operator of net single-excitation rank.

    created holds the three creation-side indices (two holes and one particle
    for kind 'hole', two particles and one hole for kind 'particle');
    destroyed is the contractible destruction index (a hole index for kind
    'hole', a particle index for kind 'particle').  The operator string is
    a^+_{c1} a^+_{c2} a_{d2} a_{d1} over the ascending electron-creation pair
    (c1, c2) and electron-destruction pair (d1, d2).
    """

    kind: str
    created: tuple     # sorted 3-tuple of creation-side spin-orbitals
    destroyed: int
    v: float           # antisymmetrized integral for the canonical string
    delta: float
    s1st: float
    creations: tuple = ()     # ascending electron-creation pair of the string
    destructions: tuple = ()  # ascending electron-destruction pair

    @property
    def index(self):
        return self.created + (self.destroyed,)


@dataclass(frozen=True)
class Pathway:
    scatterer: Scatterer
    double: DoublesCandidate
    contribution: float


@dataclass(frozen=True)
class TripleCandidate:
    kbar: tuple                  # (a, b, c, i, j, k) with a<b<c, i<j<k
    pathways: tuple              # all contributing (scatterer, double) pairs
    total: float
    selected: Pathway

    @property
    def particles(self):
        return self.kbar[:3]

    @property
    def holes(self):
        return self.kbar[3:]


@dataclass(frozen=True)
class SinglesCandidate:
    a: int
    i: int
    contribution: float
    amplitude_init: float = 0.0

    @property
    def index(self):
        return (self.a, self.i)


@dataclass(frozen=True)
class QuadruplePathway:
    kquad: tuple                 # (particles..., holes...), each ascending
    scatterer: Scatterer         # outer scatterer nu
    triple: TripleCandidate      # carries the inner (mu, I) pathway
    contribution: float
    total: float


@dataclass
class ScreeningLedger:
    """Everything the screening cascade retained, in deterministic order."""

    config: ScreeningConfig
    n_spin_orbitals: int
    doubles: list = field(default_factory=list)
    scatterers: list = field(default_factory=list)
    triples: list = field(default_factory=list)
    singles: list = field(default_factory=list)
    quadruples: list = field(default_factory=list)

    @property
    def n_d(self):
        return len(self.doubles)

    @property
    def n_s(self):
        return len(self.singles)


def _checked_ratio(v, delta, eps, label, delta_floor):
    """v/delta with degenerate-denominator policy applied.

    Returns None when the candidate cannot pass the threshold.
    """
    if abs(delta) < DELTA_MIN:
        if abs(v) <= eps * DELTA_MIN:
            return None
        if delta_floor is not None:
            delta = math.copysign(max(abs(delta), delta_floor), delta if delta else 1.0)
        else:
            raise DegeneracyError(
                f"vanishing denominator for {label}: |Delta|={abs(delta):.3e} "
                f"with |v|={abs(v):.3e}; rerun with a delta floor to clamp"
            )
    elif delta_floor is not None and abs(delta) < delta_floor:
        delta = math.copysign(delta_floor, delta)
    ratio = v / delta
    return ratio if abs(ratio) > eps else None


def _descending(items, magnitude, tiebreak):
    """Sort by descending magnitude; ties broken so that the smaller index
    tuple sorts later (acts later in the assembled unitary)."""
    return sorted(items, key=lambda x: (-magnitude(x), tuple(-t for t in tiebreak(x))))


def all_doubles(sys):
    """Every spin-allowed canonical double with a nonzero integral,
    unthresholded (degenerate denominators raise)."""
    return screen_doubles(sys, eps1=0.0, _allow_zero_eps=True)


def screen_doubles(sys, eps1, delta_floor=None, _allow_zero_eps=False):
    """Doubles with |first-order amplitude| > eps1, descending by magnitude."""
    if eps1 <= 0 and not _allow_zero_eps:
        raise ValueError("eps1 must be positive")
    occ, virt = sys.occupied, sys.virtual
    out = []
    for oi, i in enumerate(occ):
        for j in occ[oi + 1:]:
            for ai, a in enumerate(virt):
                for b in virt[ai + 1:]:
                    v = sys.v_antisym[a, b, i, j]
                    if abs(v) < 1e-14:
                        continue
                    delta = mp_denominator(sys, [i, j], [a, b])
                    t = _checked_ratio(v, delta, eps1, f"double {(a, b, i, j)}",
                                       delta_floor)
                    if t is None:
                        continue
                    out.append(DoublesCandidate(a, b, i, j, float(v), delta, t))
    return _descending(out, lambda c: abs(c.t1st), lambda c: c.index)


def mp2_energy(doubles):
    """Second-order energy sum v^2/Delta over canonical double tuples
    (equal to the quarter-folded unrestricted index sum)."""
    return float(sum(c.v * c.v / c.delta for c in doubles))


def build_orbital_tuple_set(doubles):
    """Unique 2h1p / 2p1h three-index tuples drawn from screened doubles."""
    tuples = set()
    for c in doubles:
        tuples.add(tuple(sorted((c.i, c.j, c.a))))
        tuples.add(tuple(sorted((c.i, c.j, c.b))))
        tuples.add(tuple(sorted((c.a, c.b, c.i))))
        tuples.add(tuple(sorted((c.a, c.b, c.j))))
    return tuples


def enumerate_scatterers(sys, eps2, delta_floor=None):
    """All two-body strings of net single-excitation rank with
    |v_mu/Delta_mu| > eps2 (no contraction-partner requirement yet)."""
    occ, virt = sys.occupied, sys.virtual
    out = []
    # hole-type contraction: create holes i<j and particle a, destroy hole m
    for oi, i in enumerate(occ):
        for j in occ[oi + 1:]:
            for a in virt:
                for m in occ:
                    if m == i or m == j:
                        continue
                    c1, c2 = sorted((a, m))
                    v = sys.v_antisym[c1, c2, i, j]
                    if abs(v) < 1e-14:
                        continue
                    delta = mp_denominator(sys, [i, j], [a, m])
                    s = _checked_ratio(v, delta, eps2, f"scatterer {(a, m, i, j)}",
                                       delta_floor)
                    if s is None:
                        continue
                    out.append(Scatterer("hole", tuple(sorted((i, j, a))), m,
                                         float(v), delta, s,
                                         creations=(c1, c2), destructions=(i, j)))
    # particle-type contraction: create particles a<b and hole i, destroy particle e
    for oi, i in enumerate(occ):
        for ai, a in enumerate(virt):
            for b in virt[ai + 1:]:
                for e in virt:
                    if e == a or e == b:
                        continue
                    d1, d2 = sorted((i, e))
                    v = sys.v_antisym[a, b, d1, d2]
                    if abs(v) < 1e-14:
                        continue
                    delta = mp_denominator(sys, [i, e], [a, b])
                    s = _checked_ratio(v, delta, eps2, f"scatterer {(a, b, i, e)}",
                                       delta_floor)
                    if s is None:
                        continue
                    out.append(Scatterer("particle", tuple(sorted((a, b, i))), e,
                                         float(v), delta, s,
                                         creations=(a, b), destructions=(d1, d2)))
    return _descending(out, lambda s: abs(s.s1st), lambda s: s.index)


def screen_scatterers(sys, doubles, eps2, delta_floor=None):
    """Scatterers above eps2 whose contractible destruction index matches a
    creation index (hole or particle) of at least one screened double."""
    hole_idx = {h for c in doubles for h in c.holes}
    part_idx = {p for c in doubles for p in c.particles}
    out = []
    for s in enumerate_scatterers(sys, eps2, delta_floor):
        anchor = hole_idx if s.kind == "hole" else part_idx
        if s.destroyed in anchor:
            out.append(s)
    return out


def _compose_indices(sys_occ, scatterer, double):
    """(particles, holes) of the composite excitation, or None."""
    holes = set(double.holes)
    particles = set(double.particles)
    created_holes = tuple(p for p in scatterer.created if p in sys_occ)
    created_parts = tuple(p for p in scatterer.created if p not in sys_occ)
    if scatterer.kind == "hole":
        if scatterer.destroyed not in holes:
            return None
        new_holes = holes - {scatterer.destroyed}
        if new_holes & set(created_holes) or set(created_parts) & particles:
            return None
        return (tuple(sorted(particles | set(created_parts))),
                tuple(sorted(new_holes | set(created_holes))))
    if scatterer.destroyed not in particles:
        return None
    new_parts = particles - {scatterer.destroyed}
    if new_parts & set(created_parts) or set(created_holes) & holes:
        return None
    return (tuple(sorted(new_parts | set(created_parts))),
            tuple(sorted(holes | set(created_holes))))


def screen_triples(sys, doubles, scatterers, eps3, delta_floor=None):
    """Triples whose accumulated second-order amplitude magnitude exceeds
    eps3; each retains only its strongest (scatterer, double) pathway."""
    occ_set = set(sys.occupied)
    ref = hf_determinant(sys)
    by_hole = {}
    by_particle = {}
    for c in doubles:
        for h in c.holes:
            by_hole.setdefault(h, []).append(c)
        for p in c.particles:
            by_particle.setdefault(p, []).append(c)

    det_cache = {}

    def det_amp(holes, particles, amp):
        key = (holes, particles)
        if key not in det_cache:
            det_cache[key] = determinant_from_excitation(ref, holes, particles)
        sign, mask = det_cache[key]
        return mask, sign * amp

    accum = {}
    for s in scatterers:
        partners = by_hole if s.kind == "hole" else by_particle
        for c in partners.get(s.destroyed, ()):
            composite = _compose_indices(occ_set, s, c)
            if composite is None:
                continue
            parts, holes = composite
            if len(parts) != 3 or len(holes) != 3:
                continue
            kbar = parts + holes
            mask_i, t_i = det_amp(c.holes, c.particles, c.t1st)
            sign_k, mask_k = det_cache.setdefault(
                (holes, parts), determinant_from_excitation(ref, holes, parts))
            delta_k = mp_denominator(sys, holes, parts)
            numerator = matrix_element(sys.h1, sys.v_antisym, mask_k, mask_i) * t_i
            contrib = _checked_ratio(numerator, delta_k, 0.0,
                                     f"triple {kbar}", delta_floor)
            if contrib is None:
                continue
            accum.setdefault(kbar, []).append(Pathway(s, c, sign_k * contrib))

    out = []
    for kbar, pathways in accum.items():
        total = sum(p.contribution for p in pathways)
        if abs(total) <= eps3:
            continue
        selected = min(
            pathways,
            key=lambda p: (-abs(p.contribution), p.double.index, p.scatterer.index),
        )
        out.append(TripleCandidate(kbar, tuple(pathways), float(total), selected))
    return _descending(out, lambda t: abs(t.total), lambda t: t.kbar)


def screen_singles(sys, doubles, eps3, delta_floor=None):
    """Singles from the second-order expression: every de-excitation-type
    two-body contraction of a retained double, with no scatterer filter."""
    ref = hf_determinant(sys)
    out = []
    for i in sys.occupied:
        for a in sys.virtual:
            sign_s, mask_s = determinant_from_excitation(ref, (i,), (a,))
            delta_s = mp_denominator(sys, [i], [a])
            numerator = 0.0
            for c in doubles:
                sign_d, mask_d = determinant_from_excitation(ref, c.holes, c.particles)
                if ((mask_s ^ mask_d).bit_count()) > 4:
                    continue
                elem = matrix_element(sys.h1, sys.v_antisym, mask_s, mask_d)
                numerator += elem * sign_d * c.t1st
            contrib = _checked_ratio(sign_s * numerator, delta_s, eps3,
                                     f"single {(a, i)}", delta_floor)
            if contrib is None:
                continue
            out.append(SinglesCandidate(a, i, float(contrib)))
    return _descending(out, lambda s: abs(s.contribution), lambda s: s.index)


def _fortuitous_quadruples(sys_occ, triples):
    """Eight-index tuples already simulated by blocks holding two scatterers
    attached to the same double (an artifact of the factorized unitary)."""
    by_double = {}
    for t in triples:
        by_double.setdefault(t.selected.double.index, []).append(t)
    seen = set()
    for group in by_double.values():
        for t1 in group:
            for t2 in group:
                if t1 is t2:
                    continue
                inner = _TripleAsTarget(t2)
                composite = _compose_indices(sys_occ, t1.selected.scatterer, inner)
                if composite is None:
                    continue
                parts, holes = composite
                if len(parts) == 4 and len(holes) == 4:
                    seen.add(parts + holes)
    return seen


class _TripleAsTarget:
    """Adapter giving a TripleCandidate the holes/particles interface that
    _compose_indices expects of its second argument."""

    def __init__(self, triple):
        self.holes = triple.holes
        self.particles = triple.particles


def screen_quadruples(sys, triples, scatterers, eps_q, delta_floor=None):
    """Third-order quadruple pathways: chain a retained scatterer onto each
    retained triple's composite, skipping tuples the second-order blocks
    already simulate."""
    occ_set = set(sys.occupied)
    ref = hf_determinant(sys)
    fortuitous = _fortuitous_quadruples(occ_set, triples)

    accum = {}
    for t in triples:
        target = _TripleAsTarget(t)
        sign_k, mask_k = determinant_from_excitation(ref, t.holes, t.particles)
        for s in scatterers:
            composite = _compose_indices(occ_set, s, target)
            if composite is None:
                continue
            parts, holes = composite
            if len(parts) != 4 or len(holes) != 4:
                continue
            kquad = parts + holes
            if kquad in fortuitous:
                continue
            sign_q, mask_q = determinant_from_excitation(ref, holes, parts)
            delta_q = mp_denominator(sys, holes, parts)
            numerator = (matrix_element(sys.h1, sys.v_antisym, mask_q, mask_k)
                         * sign_k * t.total)
            contrib = _checked_ratio(numerator, delta_q, 0.0,
                                     f"quadruple {kquad}", delta_floor)
            if contrib is None:
                continue
            accum.setdefault(kquad, []).append((s, t, sign_q * contrib))

    out = []
    for kquad, entries in accum.items():
        total = sum(c for _, _, c in entries)
        if abs(total) <= eps_q:
            continue
        s, t, c = min(entries, key=lambda e: (-abs(e[2]), e[1].kbar, e[0].index))
        out.append(QuadruplePathway(kquad, s, t, float(c), float(total)))
    return _descending(out, lambda q: abs(q.total), lambda q: q.kquad)


def run_screening(sys, config):
    """Run the full cascade at the configured depth."""
    ledger = ScreeningLedger(config=config, n_spin_orbitals=sys.n_spin_orbitals)
    ledger.doubles = screen_doubles(sys, config.eps1, config.delta_floor)
    if config.max_order >= 2 and ledger.doubles:
        ledger.scatterers = screen_scatterers(sys, ledger.doubles, config.eps2,
                                              config.delta_floor)
        ledger.triples = screen_triples(sys, ledger.doubles, ledger.scatterers,
                                        config.eps3, config.delta_floor)
        ledger.singles = screen_singles(sys, ledger.doubles, config.eps3,
                                        config.delta_floor)
    if config.max_order >= 3 and config.include_quadruples and ledger.triples:
        ledger.quadruples = screen_quadruples(sys, ledger.triples,
                                              ledger.scatterers, config.eps_q,
                                              config.delta_floor)
    return ledger


def ledger_to_json(ledger, indent=2):
    """Deterministic JSON rendering of a screening ledger."""
    doc = {
        "config": {
            "eps1": ledger.config.eps1,
            "eps2": ledger.config.eps2,
            "eps3": ledger.config.eps3,
            "eps_q": ledger.config.eps_q,
            "max_order": ledger.config.max_order,
            "include_quadruples": ledger.config.include_quadruples,
            "label": ledger.config.label,
        },
        "n_spin_orbitals": ledger.n_spin_orbitals,
        "counts": {
            "n_d": ledger.n_d,
            "n_s": ledger.n_s,
            "scatterers": len(ledger.scatterers),
            "triples": len(ledger.triples),
            "quadruple_pathways": len(ledger.quadruples),
        },
        "doubles": [
            {"index": c.index, "v": c.v, "delta": c.delta, "t1st": c.t1st}
            for c in ledger.doubles
        ],
        "scatterers": [
            {"kind": s.kind, "created": list(s.created), "destroyed": s.destroyed,
             "v": s.v, "delta": s.delta, "s1st": s.s1st}
            for s in ledger.scatterers
        ],
        "triples": [
            {
                "kbar": list(t.kbar),
                "total": t.total,
                "selected": {
                    "double": t.selected.double.index,
                    "scatterer": {"kind": t.selected.scatterer.kind,
                                  "created": list(t.selected.scatterer.created),
                                  "destroyed": t.selected.scatterer.destroyed},
                    "contribution": t.selected.contribution,
                },
                "pathways": [
                    {"double": p.double.index,
                     "scatterer_created": list(p.scatterer.created),
                     "scatterer_destroyed": p.scatterer.destroyed,
                     "contribution": p.contribution}
                    for p in t.pathways
                ],
            }
            for t in ledger.triples
        ],
        "singles": [
            {"index": s.index, "contribution": s.contribution,
             "amplitude_init": s.amplitude_init}
            for s in ledger.singles
        ],
        "quadruple_pathways": [
            {"kquad": list(q.kquad), "total": q.total,
             "contribution": q.contribution,
             "outer_scatterer": list(q.scatterer.index),
             "inner": {"kbar": list(q.triple.kbar),
                       "double": q.triple.selected.double.index}}
            for q in ledger.quadruples
        ],
    }
    return json.dumps(doc, indent=indent)
