"""Variational outer loop: L-BFGS over the ansatz parameters.

scipy's L-BFGS-B (strong-Wolfe line search, memory 10, unbounded) drives the
analytic-gradient simulator.  Convergence means the gradient infinity-norm
dropped below grad_tol; on line-search failure the best parameters seen so
far are returned with converged=False.  Every function evaluation is traced
(optionally with the overlap against a supplied FCI state) for convergence
plots.
"""

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .fci import overlap_with_fci
from .pauli import jw_map_hamiltonian
from .simulator import AnsatzSimulator, expectation, prepare_reference

__all__ = ["VqeOptions", "VqeResult", "run_vqe", "write_trace_csv"]


@dataclass(frozen=True)
class VqeOptions:
    grad_tol: float = 1e-7
    max_function_evals: int = 10000
    trace_every: int = 1
    optimizer: str = "lbfgs"

    def __post_init__(self):
        if self.grad_tol <= 0 or self.max_function_evals <= 0 or self.trace_every <= 0:
            raise ValueError("tolerances and limits must be positive")
        if self.optimizer != "lbfgs":
            raise ValueError(f"unsupported optimizer {self.optimizer!r}")


@dataclass
class VqeResult:
    energy: float
    params: np.ndarray
    n_function_evals: int
    trace: list = field(default_factory=list)   # (eval_index, energy, overlap|None)
    converged: bool = False


def run_vqe(ansatz, sys, options=None, fci=None, hamiltonian=None):
    """Minimize the ansatz energy starting from the seeded parameters.

    When an FciResult is supplied, the per-evaluation overlap with its ground
    state is recorded in the trace.
    """
    options = options or VqeOptions()
    h_pauli = hamiltonian if hamiltonian is not None else jw_map_hamiltonian(sys)
    reference = prepare_reference(sys)
    sim = AnsatzSimulator(ansatz, h_pauli, reference)

    if sim.n_params == 0:
        energy = expectation(reference, sim.hamiltonian)
        overlap = overlap_with_fci(reference, fci) if fci is not None else None
        return VqeResult(energy, np.zeros(0), 1, [(0, energy, overlap)], True)

    trace = []
    best = {"energy": np.inf, "params": None}
    n_evals = 0

    def objective(x):
        nonlocal n_evals
        energy, grad = sim.energy_and_gradient(x)
        if energy < best["energy"]:
            best["energy"] = energy
            best["params"] = x.copy()
        if n_evals % options.trace_every == 0:
            overlap = None
            if fci is not None:
                overlap = overlap_with_fci(sim.state(x), fci)
            trace.append((n_evals, energy, overlap))
        n_evals += 1
        return energy, grad

    x0 = ansatz.initial_params
    result = minimize(
        objective,
        x0,
        jac=True,
        method="L-BFGS-B",
        options={
            "maxfun": options.max_function_evals,
            "maxiter": options.max_function_evals,
            "gtol": options.grad_tol,
            "ftol": 1e-16,
            "maxcor": 10,
        },
    )

    if result.status == 2 and best["params"] is not None and best["energy"] < result.fun:
        params = best["params"]
        energy, grad = sim.energy_and_gradient(params)
    else:
        params = np.asarray(result.x)
        energy = float(result.fun)
        grad = np.asarray(result.jac)
    converged = bool(np.max(np.abs(grad)) <= options.grad_tol) if len(grad) else True

    final_overlap = overlap_with_fci(sim.state(params), fci) if fci is not None else None
    trace.append((n_evals, energy, final_overlap))
    return VqeResult(energy, params, n_evals, trace, converged)


def write_trace_csv(result, path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["eval_index", "energy", "overlap"])
        for idx, energy, overlap in result.trace:
            writer.writerow([idx, f"{energy:.12e}",
                             "" if overlap is None else f"{overlap:.12e}"])
