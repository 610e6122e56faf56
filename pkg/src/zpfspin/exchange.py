"""Exact symbolic engine for two-particle exchange symmetry and its
n-particle consequences.

The whole derivation is phase bookkeeping, so no float ever appears here:
coefficients are exact surd magnitudes times unit phases with rational
exponent data, and state equality is structural. Kets do not store their
angle prefactors; slot p of a ket contributes e^{-i s phi_p} canonically
(s the spin in that slot), and any numeric residue produced by exchanging
slots and substituting angles migrates into the term coefficient, where the
solver can see it.

The two-arrangement entangled state carries a symbolic relative phase built
from per-particle mode-amplitude symbols. Exchanging which arrangement is
listed first inverts that phase; exchanging the particles themselves swaps
slot contents, swaps the particle tags on the amplitude symbols, and
relabels the internal angles by a strict rotation in one sense, which is
where the exact e^{-2 pi i s} residues come from. Imposing that particle
exchange changes nothing then pins the relative phase to a number: -1 for
half-integer spins, +1 for the integer-spin probe.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import permutations, product
from typing import Mapping

from .errors import ContradictionError, SizeLimitError
from .phase_algebra import (
    MINUS_ONE,
    Coefficient,
    PhaseExpression,
    Surd,
    format_symbol,
    phi_symbol,
    zeta_symbol,
)

__all__ = [
    "CompositeKet",
    "BipartiteState",
    "MultiparticleState",
    "make_bipartite",
    "entanglement_phase",
    "StateSwapResult",
    "exchange_states",
    "ParticleSwapResult",
    "exchange_particles",
    "ExchangePhaseSolution",
    "solve_exchange_phase",
    "apply_exchange_phase",
    "negate",
    "AntiphaseResult",
    "antiphase_feasible",
    "antisymmetrize",
    "ket_to_dict",
    "state_to_dict",
    "state_hash",
    "TraceStep",
    "DerivationReport",
    "derive_antisymmetry",
]

_UNIT = Surd(Fraction(1))
_ORDERINGS = ("phi2_greater", "phi1_greater", "tie")


def _check_spin(s) -> Fraction:
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise ValueError(f"spin must be a multiple of 1/2, got {s}")
    return s


@dataclass(frozen=True)
class CompositeKet:
    """Ordered product ket; slot p (1-based particle p) holds (orbital, spin)."""

    slots: tuple

    def __post_init__(self):
        slots = tuple((str(o), _check_spin(s)) for o, s in self.slots)
        object.__setattr__(self, "slots", slots)

    @property
    def n(self) -> int:
        return len(self.slots)

    @property
    def prefactor(self) -> PhaseExpression:
        coeffs = {}
        for p, (_, s) in enumerate(self.slots, start=1):
            if s:
                coeffs[phi_symbol(p)] = -s
        return PhaseExpression(0, coeffs)

    def swapped(self) -> "CompositeKet":
        if self.n != 2:
            raise ValueError("swapped() is the two-particle slot swap")
        return CompositeKet(self.slots[::-1])


def _collect(pairs):
    """Sum coefficients per ket, drop exact zeros, order deterministically."""
    acc: dict = {}
    for coeff, ket in pairs:
        cur = acc.get(ket)
        acc[ket] = coeff if cur is None else cur + coeff
    items = [(c, k) for k, c in acc.items() if not c.is_zero]
    items.sort(key=lambda item: item[1].slots)
    return tuple(items)


@dataclass(frozen=True)
class BipartiteState:
    """(first arrangement + relative_phase * swapped arrangement)/sqrt(2).

    Equality compares terms only; the remaining fields are provenance.
    relative_phase is the symbolic phase the construction introduced and
    stays symbolic until the exchange constraint fixes it. degenerate
    records that the two arrangements share one total energy, which is what
    licenses superposing them with a time-independent relative phase.
    """

    terms: tuple
    relative_phase: PhaseExpression = field(compare=False)
    first: tuple = field(compare=False)
    second: tuple = field(compare=False)
    degenerate: bool = field(compare=False, default=True)


@dataclass(frozen=True)
class MultiparticleState:
    terms: tuple
    n: int = field(compare=False)

    @property
    def is_zero(self) -> bool:
        return not self.terms


def entanglement_phase(orbital_a: str, orbital_b: str) -> PhaseExpression:
    """Symbolic relative phase between the two arrangements.

    Particle 1 contributes its amplitude phase difference between the two
    orbitals, particle 2 the opposite difference; label-swap antisymmetry
    of each symbol is built into the symbol encoding, so the phase built
    from swapped arguments is automatically the exact inverse.
    """
    s1, sign1 = zeta_symbol(1, orbital_a, orbital_b)
    s2, sign2 = zeta_symbol(2, orbital_b, orbital_a)
    return PhaseExpression(0, {s1: Fraction(sign1), s2: Fraction(sign2)})


def make_bipartite(orbital_a, spin_a, orbital_b, spin_b, degenerate: bool = True) -> BipartiteState:
    """Entangled two-particle state over two distinct orbitals.

    The orbitals must differ: the relative phase is a ratio of mode
    amplitudes between the two orbital states and is undefined otherwise.
    Spins are any multiple of 1/2; +-1/2 is the physical case, integer
    values exist for the symmetric-statistics probe.
    """
    oa, ob = str(orbital_a), str(orbital_b)
    sa, sb = _check_spin(spin_a), _check_spin(spin_b)
    if oa == ob:
        raise ValueError("the two orbital labels must be distinct")
    lam = entanglement_phase(oa, ob)
    norm = Coefficient.of(Surd.inv_sqrt(2))
    ket_a = CompositeKet(((oa, sa), (ob, sb)))
    terms = _collect([(norm, ket_a), (norm.mul_phase(lam), ket_a.swapped())])
    return BipartiteState(
        terms=terms,
        relative_phase=lam,
        first=(oa, sa),
        second=(ob, sb),
        degenerate=degenerate,
    )


def _proportionality(new_terms, ref_terms):
    """The unit phase f with new = f * ref, or None if no single f exists."""
    if len(new_terms) != len(ref_terms):
        return None
    by_ket = {ket: coeff for coeff, ket in ref_terms}
    ratio = None
    for coeff, ket in new_terms:
        base = by_ket.get(ket)
        if base is None:
            return None
        r = coeff.ratio(base)
        if r.magnitude != _UNIT:
            return None
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    return None if ratio is None else ratio.phase


@dataclass(frozen=True)
class StateSwapResult:
    state: BipartiteState
    factor: PhaseExpression


def exchange_states(psi: BipartiteState) -> StateSwapResult:
    """Swap which arrangement is listed first, keeping particles fixed.

    Rebuilds the state from the swapped construction and verifies it is
    proportional to the input; the factor is the inverse of the input's
    relative phase, reported from the term-by-term ratio rather than
    assumed.
    """
    oa, sa = psi.first
    ob, sb = psi.second
    flipped = make_bipartite(ob, sb, oa, sa, degenerate=psi.degenerate)
    factor = _proportionality(flipped.terms, psi.terms)
    if factor is None:
        raise ContradictionError("swapped construction is not proportional to the input")
    return StateSwapResult(state=flipped, factor=factor)


def _phi_substitution(branch: str) -> dict:
    # strict rotation of both particles in the same sense; the particle
    # crossing the cut accumulates a full turn
    p1, p2 = phi_symbol(1), phi_symbol(2)
    if branch == "phi2_greater":
        return {p1: PhaseExpression.from_symbol(p2), p2: PhaseExpression(2, {p1: Fraction(1)})}
    return {p2: PhaseExpression.from_symbol(p1), p1: PhaseExpression(2, {p2: Fraction(1)})}


def _swap_zeta_particles(expr: PhaseExpression) -> PhaseExpression:
    mapping = {}
    for sym in expr.coeffs:
        if isinstance(sym, tuple) and sym and sym[0] == "zeta":
            mapping[sym] = ("zeta", {1: 2, 2: 1}[sym[1]], sym[2])
    return expr.relabel(mapping)


def _exchange_branch(psi: BipartiteState, branch: str) -> BipartiteState:
    subst = _phi_substitution(branch)
    pairs = []
    for coeff, ket in psi.terms:
        new_ket = ket.swapped()
        residual = ket.prefactor.substitute(subst) * new_ket.prefactor.inverse()
        if not residual.is_numeric:
            raise ContradictionError("angle relabeling left a symbolic residue")
        pairs.append((coeff.transform_phase(_swap_zeta_particles).mul_phase(residual), new_ket))
    return replace(psi, terms=_collect(pairs), first=psi.second, second=psi.first)


@dataclass(frozen=True)
class ParticleSwapResult:
    state: BipartiteState
    factor: PhaseExpression | None
    ordering: str
    tie_flagged: bool
    branches_agree: bool


def exchange_particles(psi: BipartiteState, ordering: str = "phi2_greater") -> ParticleSwapResult:
    """Exchange the particles themselves by a same-sense rotation.

    ordering names which internal angle is the larger one; "tie" routes to
    the phi2_greater branch and flags the choice. Both branches are always
    evaluated and compared structurally. factor is None when the exchanged
    state is not a single multiple of the input (mixed integer/half-integer
    spins do this).
    """
    if ordering not in _ORDERINGS:
        raise ValueError(f"ordering must be one of {_ORDERINGS}, got {ordering!r}")
    tie = ordering == "tie"
    branch = "phi2_greater" if tie else ordering
    other = "phi1_greater" if branch == "phi2_greater" else "phi2_greater"
    chosen = _exchange_branch(psi, branch)
    agree = chosen == _exchange_branch(psi, other)
    return ParticleSwapResult(
        state=chosen,
        factor=_proportionality(chosen.terms, psi.terms),
        ordering=branch,
        tie_flagged=tie,
        branches_agree=agree,
    )


@dataclass(frozen=True)
class ExchangePhaseSolution:
    """Numeric value forced on the relative phase by exchange invariance.

    constraint maps one amplitude symbol to its forced exponent in terms of
    the other; for the antisymmetric solution it reads as the two symbols
    differing by exactly pi (antiphase coupling to the shared modes).
    """

    value: PhaseExpression
    antisymmetric: bool
    constraint: Mapping
    exchange: ParticleSwapResult = field(compare=False)


def _pin_symbols(lam: PhaseExpression, value: PhaseExpression) -> dict:
    syms = sorted(lam.coeffs, key=format_symbol)
    if not syms:
        if lam != value:
            raise ContradictionError("numeric relative phase conflicts with the solved value")
        return {}
    dep = syms[0]
    c0 = lam.coeffs[dep]
    q = (value.pi_part - lam.pi_part) / c0
    coeffs = {s: -lam.coeffs[s] / c0 for s in syms[1:]}
    return {dep: PhaseExpression(q, coeffs)}


def solve_exchange_phase(psi: BipartiteState, ordering: str = "phi2_greater") -> ExchangePhaseSolution:
    """Impose that exchanging the particles leaves the state identical.

    The exchanged state equals (factor * psi) with factor carrying the
    inverse symbolic phase, so the identity constraint makes the product
    factor * relative_phase the solved numeric value. Anything short of a
    clean numeric value is a contradiction: disagreeing angle orderings, no
    single proportionality factor, or leftover symbols.
    """
    swap = exchange_particles(psi, ordering)
    if not swap.branches_agree:
        raise ContradictionError("the two angle orderings disagree; no consistent exchange phase")
    if swap.factor is None:
        raise ContradictionError("particle exchange is not a single overall factor")
    value = swap.factor * psi.relative_phase
    if not value.is_numeric:
        raise ContradictionError("the exchange constraint leaves the phase undetermined")
    return ExchangePhaseSolution(
        value=value,
        antisymmetric=value.is_minus_one,
        constraint=_pin_symbols(psi.relative_phase, value),
        exchange=swap,
    )


def apply_exchange_phase(psi: BipartiteState, solution: ExchangePhaseSolution) -> BipartiteState:
    """Substitute the solved constraint into every coefficient."""
    pairs = [
        (coeff.transform_phase(lambda p: p.substitute(solution.constraint)), ket)
        for coeff, ket in psi.terms
    ]
    return replace(
        psi,
        terms=_collect(pairs),
        relative_phase=psi.relative_phase.substitute(solution.constraint),
    )


def negate(state):
    """The same state with every coefficient's sign flipped."""
    return replace(state, terms=tuple((c.mul_phase(MINUS_ONE), k) for c, k in state.terms))


# --- antiphase feasibility ----------------------------------------------------


@dataclass(frozen=True)
class AntiphaseResult:
    n: int
    feasible: bool
    witness: tuple | None
    cross_check: bool | None


def _pairwise_antiphase(assignment) -> bool:
    # angles in units of pi, constraint: every pair differs by pi mod 2 pi
    return all(
        (assignment[i] - assignment[j]) % 2 == 1
        for i in range(len(assignment))
        for j in range(i + 1, len(assignment))
    )


def antiphase_feasible(n: int) -> AntiphaseResult:
    """Can n phases be pairwise in antiphase on the circle?

    Exact propagation: anchor the first angle at 0; every other angle is
    then forced to pi, and any third angle pair violates the constraint, so
    the answer is yes only for n <= 2. Angles are Fractions in units of pi.
    For n <= 4 an exhaustive eighth-turn grid search double-checks the
    propagation answer; the grid is complete because any solution is
    forced, up to the anchor, onto the two values it contains.
    """
    if n < 1:
        raise ValueError("particle count must be at least 1")
    candidate = tuple(Fraction(0) if i == 0 else Fraction(1) for i in range(n))
    feasible = _pairwise_antiphase(candidate)
    witness = candidate if feasible else None

    cross = None
    if n <= 4:
        grid = [Fraction(k, 4) for k in range(8)]
        found = None
        for combo in _product_grid(grid, n):
            if _pairwise_antiphase(combo):
                found = combo
                break
        cross = (found is not None) == feasible
    return AntiphaseResult(n=n, feasible=feasible, witness=witness, cross_check=cross)


def _product_grid(values, n):
    # anchored product: fixing the first angle at 0 costs nothing by
    # rotational freedom and keeps the search at 8^(n-1) tuples
    for rest in product(values, repeat=n - 1):
        yield (Fraction(0),) + rest


# --- n-particle antisymmetrizer ----------------------------------------------


def _parity(perm) -> int:
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return inversions % 2


def antisymmetrize(labels) -> MultiparticleState:
    """Signed sum over all slot assignments, normalized by 1/sqrt(n!).

    Signs follow transposition parity. A repeated single-particle label
    makes every term cancel exactly and the zero state comes back; that is
    the algebraic face of the exclusion rule, not an error.
    """
    labs = [(str(o), _check_spin(s)) for o, s in labels]
    n = len(labs)
    if n < 1:
        raise ValueError("need at least one single-particle state")
    if n > 8:
        raise SizeLimitError(f"refusing n = {n}: the expansion has n! terms")
    norm = Coefficient.of(Surd.inv_sqrt(math.factorial(n)))
    flipped = norm.mul_phase(MINUS_ONE)
    pairs = []
    for perm in permutations(range(n)):
        coeff = norm if _parity(perm) == 0 else flipped
        pairs.append((coeff, CompositeKet(tuple(labs[i] for i in perm))))
    return MultiparticleState(terms=_collect(pairs), n=n)


# --- serialization and the derivation trace ----------------------------------


def ket_to_dict(ket: CompositeKet) -> dict:
    return {"slots": [{"orbital": o, "spin": str(s)} for o, s in ket.slots]}


def state_to_dict(state) -> dict:
    d = {
        "terms": [
            {"coefficient": coeff.to_dict(), "ket": ket_to_dict(ket)}
            for coeff, ket in state.terms
        ]
    }
    if isinstance(state, BipartiteState):
        d["kind"] = "bipartite"
        d["relative_phase"] = state.relative_phase.format()
        d["degenerate"] = state.degenerate
    else:
        d["kind"] = "multiparticle"
        d["n"] = state.n
        d["zero"] = state.is_zero
    return d


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def state_hash(state) -> str:
    return _digest(state_to_dict(state))


@dataclass(frozen=True)
class TraceStep:
    operation: str
    input_hash: str
    output_hash: str
    phase: str | None

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "input_hash": self.input_hash,
            "output_hash": self.output_hash,
            "phase": self.phase,
        }


@dataclass(frozen=True)
class DerivationReport:
    """Full derivation run: states, solution, consistency flags, trace."""

    initial: BipartiteState
    solution: ExchangePhaseSolution
    resolved: BipartiteState
    resolved_swapped: BipartiteState
    antisymmetric: bool
    swap_factor: PhaseExpression
    matches_antisymmetrizer: bool
    trace: tuple

    def to_dict(self) -> dict:
        return {
            "initial": state_to_dict(self.initial),
            "value": self.solution.value.format(),
            "antisymmetric": self.antisymmetric,
            "resolved": state_to_dict(self.resolved),
            "resolved_swapped": state_to_dict(self.resolved_swapped),
            "swap_factor": self.swap_factor.format(),
            "matches_antisymmetrizer": self.matches_antisymmetrizer,
            "trace": [step.to_dict() for step in self.trace],
        }


def derive_antisymmetry(
    orbital_a="alpha",
    spin_a=Fraction(1, 2),
    orbital_b="beta",
    spin_b=Fraction(1, 2),
    ordering: str = "phi2_greater",
) -> DerivationReport:
    """Run the whole mechanical derivation and log each step.

    Constructs the entangled pair, exchanges states, exchanges particles,
    solves the invariance constraint, applies it, and checks the resolved
    state against both the swapped-ordering run and the two-particle
    antisymmetrizer.
    """
    params = {
        "orbital_a": str(orbital_a),
        "spin_a": str(_check_spin(spin_a)),
        "orbital_b": str(orbital_b),
        "spin_b": str(_check_spin(spin_b)),
        "ordering": ordering,
    }
    psi = make_bipartite(orbital_a, spin_a, orbital_b, spin_b)
    h_psi = state_hash(psi)
    trace = [TraceStep("construct", _digest(params), h_psi, psi.relative_phase.format())]

    flipped = exchange_states(psi)
    trace.append(
        TraceStep("exchange_states", h_psi, state_hash(flipped.state), flipped.factor.format())
    )

    swapped = exchange_particles(psi, ordering)
    trace.append(
        TraceStep(
            "exchange_particles",
            h_psi,
            state_hash(swapped.state),
            None if swapped.factor is None else swapped.factor.format(),
        )
    )

    solution = solve_exchange_phase(psi, ordering)
    resolved = apply_exchange_phase(psi, solution)
    trace.append(
        TraceStep(
            "solve_exchange_phase",
            state_hash(swapped.state),
            state_hash(resolved),
            solution.value.format(),
        )
    )

    resolved_swapped = apply_exchange_phase(flipped.state, solution)
    swap_factor = _proportionality(resolved_swapped.terms, resolved.terms)
    if swap_factor is None:
        raise ContradictionError("resolved states are not proportional")
    trace.append(
        TraceStep(
            "apply_exchange_phase",
            state_hash(flipped.state),
            state_hash(resolved_swapped),
            swap_factor.format(),
        )
    )

    pair = antisymmetrize([psi.first, psi.second])
    return DerivationReport(
        initial=psi,
        solution=solution,
        resolved=resolved,
        resolved_swapped=resolved_swapped,
        antisymmetric=solution.antisymmetric,
        swap_factor=swap_factor,
        matches_antisymmetrizer=solution.antisymmetric and pair.terms == resolved.terms,
        trace=tuple(trace),
    )
