"""Operator blocks and disentangled-ansatz assembly.

An ansatz is an ordered product of single-generator exponentials applied to
the reference.  Each operator block starts with one cluster double (tau) and
optionally carries scatterers (sigma) that share a contractible index with
it, applied after the tau; cluster singles form a tail applied after all
blocks.  Parameter slots are assigned in application order.

The screened assembly orders blocks by descending first-order amplitude
magnitude (the strongest double acts first on the reference) and the sigmas
inside a block by descending pathway-contribution magnitude.  Baseline
UCCSD/UCCSDT pools use plain lexicographic ordering (singles, then doubles,
then triples; each operator its own block) since amplitude ordering is
meaningless for a static pool; the ordering convention is recorded in the
exported metadata because disentangled energies depend on it.
"""

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import LedgerInconsistencyError
from .fcidump import mp_denominator
from .screening import _descending

__all__ = [
    "Generator",
    "OperatorBlock",
    "Ansatz",
    "assemble_compact",
    "assemble_uccsd",
    "assemble_uccsdt",
    "initial_parameters",
    "ansatz_to_json",
    "ansatz_ir",
]


@dataclass(frozen=True)
class Generator:
    """Anti-hermitian generator: operator string minus its conjugate.

    The string is a^+_{c1} a^+_{c2} ... a_{dk} ... a_{d1} with ``creates``
    and ``destroys`` each ascending; one variational parameter per generator.
    ``seed`` is the initial parameter value (first-order amplitude for
    cluster doubles, zero otherwise unless scatterer seeding is requested).
    """

    kind: str          # cluster_single | cluster_double | cluster_triple | scatterer
    creates: tuple
    destroys: tuple
    param_slot: int = -1
    seed: float = 0.0

    def second_quantized_ops(self):
        """(index, is_creation) pairs in left-to-right string order."""
        return tuple((c, True) for c in self.creates) + tuple(
            (d, False) for d in reversed(self.destroys)
        )

    @property
    def index(self):
        return self.creates + self.destroys


@dataclass(frozen=True)
class OperatorBlock:
    tau: Generator
    sigmas: tuple = ()
    block_rank: int = 0

    def generators(self):
        return (self.tau,) + self.sigmas


@dataclass(frozen=True)
class Ansatz:
    """Ordered disentangled unitary: blocks first (block 0 acts first on the
    reference), then the singles tail."""

    blocks: tuple
    singles_tail: tuple
    n_qubits: int
    label: str
    ordering: str = "screened-amplitude"

    def generators(self):
        """All generators in application order."""
        gens = []
        for block in self.blocks:
            gens.extend(block.generators())
        gens.extend(self.singles_tail)
        return gens

    @property
    def n_params(self):
        return len(self.generators())

    @property
    def initial_params(self):
        return np.array([g.seed for g in self.generators()])


def _assign_slots(blocks, tail):
    slot = 0
    out_blocks = []
    for block in blocks:
        tau = replace(block.tau, param_slot=slot)
        slot += 1
        sigmas = []
        for s in block.sigmas:
            sigmas.append(replace(s, param_slot=slot))
            slot += 1
        out_blocks.append(OperatorBlock(tau, tuple(sigmas), block.block_rank))
    out_tail = []
    for g in tail:
        out_tail.append(replace(g, param_slot=slot))
        slot += 1
    return tuple(out_blocks), tuple(out_tail)


def assemble_compact(ledger, seed_scatterers=False):
    """Materialize a screening ledger into the blocked disentangled ansatz.

    One block per screened double in ledger order; each retained triple
    contributes its selected pathway's scatterer to the block owning the
    pathway's double, and retained quadruple pathways append their outer
    scatterer after those.  Doubles whose pathways were all pruned keep an
    empty scatterer list.  Screened singles form the tail.
    """
    # canonicalize: assembly must not depend on ledger storage order
    doubles = _descending(ledger.doubles, lambda c: abs(c.t1st), lambda c: c.index)
    singles = _descending(ledger.singles, lambda s: abs(s.contribution),
                          lambda s: s.index)

    block_of = {}
    blocks = []
    for rank, c in enumerate(doubles):
        tau = Generator("cluster_double", c.particles, c.holes, seed=c.t1st)
        block_of[c.index] = rank
        blocks.append([tau, []])

    def attach(double_index, scatterer, stage, strength, what):
        rank = block_of.get(double_index)
        if rank is None:
            raise LedgerInconsistencyError(
                f"{what} references double {double_index} absent from the ledger"
            )
        seed = scatterer.s1st if seed_scatterers else 0.0
        gen = Generator("scatterer", scatterer.creations, scatterer.destructions,
                        seed=seed)
        blocks[rank][1].append((stage, strength, gen))

    for t in ledger.triples:
        attach(t.selected.double.index, t.selected.scatterer, 0,
               abs(t.selected.contribution), f"triple {t.kbar}")
    for q in ledger.quadruples:
        attach(q.triple.selected.double.index, q.scatterer, 1,
               abs(q.contribution), f"quadruple pathway {q.kquad}")

    built = []
    for rank, (tau, sigmas) in enumerate(blocks):
        # second-order sigmas first, strongest pathway right after the tau;
        # third-order (quadruple) sigmas follow in the same ordering
        ordered = [g for _, _, g in sorted(
            sigmas, key=lambda sg: (sg[0], -sg[1], sg[2].index))]
        built.append(OperatorBlock(tau, tuple(ordered), block_rank=rank))

    tail = [
        Generator("cluster_single", (s.a,), (s.i,), seed=0.0)
        for s in singles
    ]
    blocks_out, tail_out = _assign_slots(built, tail)
    return Ansatz(blocks_out, tail_out, ledger.n_spin_orbitals,
                  label=ledger.config.label)


def _sz_conserving(sys, holes, particles):
    n_alpha_h = sum(1 for p in holes if sys.spin(p) == 0)
    n_alpha_p = sum(1 for p in particles if sys.spin(p) == 0)
    return n_alpha_h == n_alpha_p


def _double_seed(sys, holes, particles):
    delta = mp_denominator(sys, holes, particles)
    if abs(delta) < 1e-10:
        return 0.0
    return float(sys.v_antisym[particles[0], particles[1], holes[0], holes[1]] / delta)


def _baseline_pool(sys, ranks):
    occ, virt = sys.occupied, sys.virtual
    gens = []
    if 1 in ranks:
        for i in occ:
            for a in virt:
                if sys.spin(i) == sys.spin(a):
                    gens.append(Generator("cluster_single", (a,), (i,), seed=0.0))
    if 2 in ranks:
        for oi, i in enumerate(occ):
            for j in occ[oi + 1:]:
                for ai, a in enumerate(virt):
                    for b in virt[ai + 1:]:
                        if _sz_conserving(sys, (i, j), (a, b)):
                            gens.append(Generator(
                                "cluster_double", (a, b), (i, j),
                                seed=_double_seed(sys, (i, j), (a, b))))
    if 3 in ranks:
        nocc, nvirt = len(occ), len(virt)
        for ii in range(nocc):
            for jj in range(ii + 1, nocc):
                for kk in range(jj + 1, nocc):
                    holes = (occ[ii], occ[jj], occ[kk])
                    for aa in range(nvirt):
                        for bb in range(aa + 1, nvirt):
                            for cc in range(bb + 1, nvirt):
                                parts = (virt[aa], virt[bb], virt[cc])
                                if _sz_conserving(sys, holes, parts):
                                    gens.append(Generator(
                                        "cluster_triple", parts, holes, seed=0.0))
    rank_order = {"cluster_single": 0, "cluster_double": 1, "cluster_triple": 2}
    gens.sort(key=lambda g: (rank_order[g.kind], g.destroys, g.creates))
    blocks = tuple(
        OperatorBlock(g, (), block_rank=r) for r, g in enumerate(gens)
    )
    return blocks


def assemble_uccsd(sys):
    """Static pool of all Sz-conserving singles and doubles (each spin case a
    separate parameter), lexicographic order, doubles seeded at first order."""
    blocks, tail = _assign_slots(_baseline_pool(sys, (1, 2)), [])
    return Ansatz(blocks, tail, sys.n_spin_orbitals, label="uccsd",
                  ordering="lexicographic")


def assemble_uccsdt(sys):
    """assemble_uccsd plus all Sz-conserving triples (seeded at zero)."""
    blocks, tail = _assign_slots(_baseline_pool(sys, (1, 2, 3)), [])
    return Ansatz(blocks, tail, sys.n_spin_orbitals, label="uccsdt",
                  ordering="lexicographic")


def initial_parameters(ansatz, ledger=None):
    """Initial parameter vector: cluster doubles at their first-order
    amplitudes, everything else at its stored seed (zero by default).

    When a ledger is supplied, double seeds are re-read from it by index so a
    re-screened ledger can re-seed an existing ansatz.
    """
    if ledger is None:
        return ansatz.initial_params
    t_by_index = {c.index: c.t1st for c in ledger.doubles}
    vec = np.zeros(ansatz.n_params)
    for g in ansatz.generators():
        if g.kind == "cluster_double":
            key = g.creates + g.destroys
            if key not in t_by_index:
                raise LedgerInconsistencyError(
                    f"ansatz double {key} missing from ledger")
            vec[g.param_slot] = t_by_index[key]
        else:
            vec[g.param_slot] = g.seed
    return vec


def ansatz_to_json(ansatz, indent=2):
    doc = {
        "label": ansatz.label,
        "ordering": ansatz.ordering,
        "n_qubits": ansatz.n_qubits,
        "n_params": ansatz.n_params,
        "blocks": [
            {
                "rank": b.block_rank,
                "tau": _gen_doc(b.tau),
                "sigmas": [_gen_doc(s) for s in b.sigmas],
            }
            for b in ansatz.blocks
        ],
        "singles_tail": [_gen_doc(g) for g in ansatz.singles_tail],
    }
    return json.dumps(doc, indent=indent)


def _gen_doc(g):
    return {
        "kind": g.kind,
        "creates": list(g.creates),
        "destroys": list(g.destroys),
        "slot": g.param_slot,
        "seed": g.seed,
    }


def ansatz_ir(ansatz):
    """Plain-text dump, one generator per line in application order."""
    lines = []
    for g in ansatz.generators():
        ops = " ".join(
            f"{'+' if dagger else '-'}a{p}" for p, dagger in g.second_quantized_ops()
        )
        lines.append(f"slot {g.param_slot:3d}  {g.kind:<14s} {ops}  seed {g.seed: .10e}")
    return "\n".join(lines) + "\n"
