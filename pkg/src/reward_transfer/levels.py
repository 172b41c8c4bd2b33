"""Finding the most self-interested contract that still resolves a game.

The level of a transfer matrix is its smallest diagonal entry: the share
of their own reward the most-taxed player keeps.  For a game and a
target profile we look for the contract with the largest level under
which the target becomes weakly dominant.  Two searches are offered:

* ``symmetrical_level`` restricts contracts to the one-parameter family
  where everyone keeps s and splits the rest evenly; the optimum has a
  closed form (an interval intersection).
* ``general_level`` searches all transfer matrices with a linear
  program: variables are the n*n shares plus the level z, constraints
  say z is below every diagonal entry, rows are conserving (or may burn
  reward with ``allow_excess``), and no player profits by deviating from
  the target against any co-profile.

Deviation constraints number n * 2**(n-1), so for larger games they are
generated lazily: solve on a working set, scan the full set for
violations, add the worst offenders, repeat.  The relaxation optimum
only ever over-estimates, so a violation-free solution is exact.
"""

from __future__ import annotations

import enum
import logging
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .game import (ActionProfile, COOPERATE, DilemmaClassification,
                   DilemmaKind, NormalFormGame, classify_dilemma,
                   deviation_indices, social_optima)
from .lp import LinearProgram, LpStatus, solve_lp
from .transfer import (ExcessReport, TransferMatrix, exchange_matrix,
                       excess_report)

log = logging.getLogger(__name__)

# below this many deviation rows we just build them all
_LAZY_THRESHOLD = 256
_ROWS_PER_ROUND = 8


class SolveMode(enum.Enum):
    SYMMETRIC = "symmetric"
    GENERAL = "general"
    GENERAL_WITH_EXCESS = "general-with-excess"


class NotADilemmaError(ValueError):
    """The game fails the dilemma conditions and force was not given."""

    def __init__(self, message: str, classification: DilemmaClassification):
        super().__init__(message)
        self.classification = classification


class NotResolvableError(RuntimeError):
    """No admissible contract makes the target weakly dominant."""


@dataclass(frozen=True)
class SelfInterestResult:
    """Outcome of a level search.

    ``binding`` lists the (player, co-profile mask) deviation
    constraints that hold with equality at the optimum; these are the
    temptations the contract only just neutralizes.
    """

    level: float
    matrix: TransferMatrix
    target: ActionProfile
    binding: tuple[tuple[int, int], ...]
    excess: ExcessReport
    mode: SolveMode


def deviation_deltas(game: NormalFormGame,
                     target: ActionProfile,
                     player: int) -> np.ndarray:
    """Reward changes caused by one player's defection from the target.

    Row m (a co-profile mask) is the vector of every player's reward
    change when ``player`` swaps their target action for its opposite
    while the co-players play m.
    """
    if target.n != game.n:
        raise ValueError("target profile size does not match the game")
    rows_c, rows_d = deviation_indices(game.n, player)
    if target.action(player) == COOPERATE:
        rows_tgt, rows_dev = rows_c, rows_d
    else:
        rows_tgt, rows_dev = rows_d, rows_c
    return game.payoffs[rows_dev] - game.payoffs[rows_tgt]


def _gate_dilemma(game, force, tolerance=1e-9) -> Optional[DilemmaClassification]:
    classification = classify_dilemma(game, tolerance)
    if classification.kind is DilemmaKind.NOT_DILEMMA and not force:
        first = classification.witnesses[0].describe(game.n)
        raise NotADilemmaError(
            f"not a social dilemma ({first}); pass force=True to search anyway",
            classification)
    return classification


def _warn_if_suboptimal(game, target):
    if target not in social_optima(game):
        warnings.warn(
            f"target {target} is not a social optimum of the game",
            UserWarning, stacklevel=3)


def _resolve_target(game, target) -> ActionProfile:
    if target is None:
        return ActionProfile.all_cooperate(game.n)
    if target.n != game.n:
        raise ValueError("target profile size does not match the game")
    return target


def symmetrical_level(game: NormalFormGame,
                      target: Optional[ActionProfile] = None,
                      force: bool = False,
                      tolerance: float = 1e-9) -> SelfInterestResult:
    """Largest kept share s for which the even-split exchange contract
    resolves the game.

    Each deviation constraint is linear in s, so each yields a one-sided
    bound and the answer is the upper end of the feasible interval
    intersected with [0, 1].  Raises NotResolvableError when the
    interval is empty.
    """
    target = _resolve_target(game, target)
    _gate_dilemma(game, force)
    _warn_if_suboptimal(game, target)
    n = game.n
    deltas = [deviation_deltas(game, target, i) for i in range(n)]
    scale = 1.0 + max(float(np.abs(d).max()) for d in deltas)
    tiny = 1e-12 * scale

    lo, hi = 0.0, 1.0
    for i in range(n):
        own = deltas[i][:, i]
        others = deltas[i].sum(axis=1) - own
        # s * own + (1 - s)/(n - 1) * others <= 0, rearranged in s
        coef = own - others / (n - 1)
        base = -others / (n - 1)
        for m in range(coef.size):
            if coef[m] > tiny:
                hi = min(hi, base[m] / coef[m])
            elif coef[m] < -tiny:
                lo = max(lo, base[m] / coef[m])
            elif base[m] < -tiny:
                raise NotResolvableError(
                    "deviation gains are immune to symmetrical transfers "
                    f"(player {i + 1}); no exchange share resolves {target}")
    if lo > hi + tiny:
        raise NotResolvableError(
            f"no exchange share makes {target} weakly dominant "
            f"(feasible interval [{lo:.6g}, {hi:.6g}] is empty)")

    level = hi
    matrix = exchange_matrix(n, level)
    binding = []
    for i in range(n):
        own = deltas[i][:, i]
        others = deltas[i].sum(axis=1) - own
        resid = level * own + (1.0 - level) / (n - 1) * others
        for m in np.flatnonzero(np.abs(resid) <= tolerance * scale):
            binding.append((i, int(m)))
    return SelfInterestResult(
        level=float(level),
        matrix=matrix,
        target=target,
        binding=tuple(binding),
        excess=excess_report(matrix),
        mode=SolveMode.SYMMETRIC,
    )


def _deviation_row(n, deltas_i, player, mask):
    row = np.zeros(n * n + 1)
    row[player:n * n:n] = deltas_i[mask]
    return row


def _build_lp(n, deltas, working, allow_excess, objective, level_floor=None):
    nv = n * n + 1
    z = n * n
    rows = []
    for i in range(n):
        aux = np.zeros(nv)
        aux[z] = 1.0
        aux[i * n + i] = -1.0
        rows.append(aux)
    for i in range(n):
        for mask in sorted(working[i]):
            rows.append(_deviation_row(n, deltas[i], i, mask))
    b_ub = [0.0] * len(rows)

    row_sums = np.zeros((n, nv))
    for i in range(n):
        row_sums[i, i * n:(i + 1) * n] = 1.0
    if allow_excess:
        a_ub = np.vstack([rows, row_sums])
        b_ub = np.array(b_ub + [1.0] * n)
        a_eq = b_eq = None
    else:
        a_ub = np.array(rows)
        b_ub = np.array(b_ub)
        a_eq, b_eq = row_sums, np.ones(n)

    c = np.zeros(nv)
    if objective == "level":
        c[z] = 1.0
    elif objective == "min-total":
        c[:n * n] = -1.0
    elif objective == "max-diag":
        c[::n + 1][:n] = 1.0
    else:
        raise ValueError(f"unknown objective {objective!r}")

    lower = np.zeros(nv)
    if level_floor is not None:
        lower[z] = level_floor
    return LinearProgram(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq,
                         lower=lower)


def _scan_violations(deltas, matrix_cols, working, atol):
    """Most-violated missing deviation constraints, per player."""
    additions = []
    for i in range(len(deltas)):
        resid = deltas[i] @ matrix_cols[:, i]
        bad = np.flatnonzero(resid > atol)
        if bad.size == 0:
            continue
        fresh = np.array([m for m in bad if m not in working[i]], dtype=np.int64)
        if fresh.size == 0:
            continue
        order = np.lexsort((fresh, -resid[fresh]))
        additions.append((i, fresh[order[:_ROWS_PER_ROUND]]))
    return additions


def _solve_stage(n, deltas, working, allow_excess, objective, level_floor,
                 feas_tol, opt_tol, atol, max_rounds):
    """Solve one LP objective under lazy constraint generation."""
    for _ in range(max_rounds):
        lp = _build_lp(n, deltas, working, allow_excess, objective, level_floor)
        sol = solve_lp(lp, feas_tol=feas_tol, opt_tol=opt_tol)
        if sol.status is LpStatus.INFEASIBLE:
            return sol
        if sol.status is LpStatus.UNBOUNDED:
            raise RuntimeError("level search reported unbounded; the level "
                               "is capped by construction, so this is a bug")
        t = sol.x[:n * n].reshape(n, n)
        additions = _scan_violations(deltas, t, working, atol)
        if not additions:
            return sol
        for i, masks in additions:
            working[i].update(int(m) for m in masks)
    raise RuntimeError("constraint generation did not converge")


def _matrix_from_solution(x, n, conserving) -> TransferMatrix:
    t = x[:n * n].reshape(n, n).copy()
    t[np.abs(t) < 1e-12] = 0.0
    np.clip(t, 0.0, 1.0, out=t)
    sums = t.sum(axis=1)
    if conserving:
        t /= sums[:, None]
    else:
        over = sums > 1.0
        if over.any():
            t[over] /= sums[over, None]
    return TransferMatrix(t)


def _binding_pairs(deltas, matrix, tolerance):
    pairs = []
    cols = matrix.entries
    for i in range(len(deltas)):
        resid = deltas[i] @ cols[:, i]
        for m in np.flatnonzero(np.abs(resid) <= tolerance):
            pairs.append((i, int(m)))
    return pairs


def general_level(game: NormalFormGame,
                  target: Optional[ActionProfile] = None,
                  *,
                  allow_excess: bool = False,
                  force: bool = False,
                  feas_tol: float = 1e-9,
                  opt_tol: float = 1e-9,
                  binding_tol: float = 1e-7,
                  refine_diagonal: bool = False,
                  max_rounds: int = 200) -> SelfInterestResult:
    """Search all transfer contracts for the highest resolving level.

    With ``allow_excess`` rows may sum to less than one (burning reward
    as a deterrent); a second LP pass then minimizes the total paid out
    so the reported slack is the largest one compatible with the level.
    With ``refine_diagonal`` (conserving mode only) a second pass
    maximizes the diagonal sum to break ties among optimal matrices.

    Raises NotADilemmaError for non-dilemmas unless ``force`` is given,
    and NotResolvableError when no contract works at all.
    """
    target = _resolve_target(game, target)
    _gate_dilemma(game, force)
    _warn_if_suboptimal(game, target)
    n = game.n
    deltas = [deviation_deltas(game, target, i) for i in range(n)]
    scale = 1.0 + max(float(np.abs(d).max()) for d in deltas)
    atol = feas_tol * scale

    n_co = 1 << (n - 1)
    if n * n_co <= _LAZY_THRESHOLD:
        working = [set(range(n_co)) for _ in range(n)]
    else:
        working = [{0, n_co - 1} for _ in range(n)]

    sol = _solve_stage(n, deltas, working, allow_excess, "level", None,
                       feas_tol, opt_tol, atol, max_rounds)
    if sol.status is LpStatus.INFEASIBLE:
        raise NotResolvableError(
            f"no transfer contract makes {target} weakly dominant")
    level = float(sol.objective_value)
    log.debug("level %.12g after stage 1 (%d iterations)", level, sol.iterations)

    if allow_excess or refine_diagonal:
        objective = "min-total" if allow_excess else "max-diag"
        refined = _solve_stage(n, deltas, working, allow_excess, objective,
                               level, feas_tol, opt_tol, atol, max_rounds)
        if refined.status is LpStatus.OPTIMAL:
            sol = refined

    matrix = _matrix_from_solution(sol.x, n, conserving=not allow_excess)
    binding = _binding_pairs(deltas, matrix, binding_tol)
    return SelfInterestResult(
        level=level,
        matrix=matrix,
        target=target,
        binding=tuple(binding),
        excess=excess_report(matrix),
        mode=SolveMode.GENERAL_WITH_EXCESS if allow_excess else SolveMode.GENERAL,
    )


def _permutation_powers(generator: Sequence[int], n: int) -> list[np.ndarray]:
    perm = np.asarray(generator, dtype=int)
    if perm.shape != (n,) or sorted(perm.tolist()) != list(range(n)):
        raise ValueError("generator must be a permutation of the players")
    orbit = {0}
    at = 0
    for _ in range(n - 1):
        at = int(perm[at])
        orbit.add(at)
    if len(orbit) != n:
        raise ValueError("generator must be a single cycle through all "
                         "players; its orbit of player 1 is shorter")
    powers = [np.arange(n)]
    for _ in range(n - 1):
        powers.append(perm[powers[-1]])
    return powers


def _check_symmetry(game, perm, tolerance=1e-9):
    n = game.n
    bits = np.arange(1 << n)
    mapped = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        mapped |= ((bits >> i) & 1) << int(perm[i])
    table = game.payoffs
    diff = np.abs(table[mapped][:, perm] - table).max()
    scale = 1.0 + float(np.abs(table).max())
    if diff > tolerance * scale:
        raise ValueError(
            "the game is not symmetric under the generator "
            f"(payoff mismatch {diff:.3g})")


def general_level_symmetric_fastpath(game: NormalFormGame,
                                     generator: Optional[Sequence[int]] = None,
                                     *,
                                     force: bool = False,
                                     feas_tol: float = 1e-9,
                                     opt_tol: float = 1e-9,
                                     binding_tol: float = 1e-7,
                                     max_rounds: int = 200) -> SelfInterestResult:
    """General-level search for games with a cyclic player symmetry.

    ``generator`` is a permutation (one n-cycle) under which the game is
    invariant: relabeling players by it leaves the payoff table
    unchanged.  The optimal matrix can then be taken to share the
    symmetry, which collapses the n*n shares to the n entries of one
    row; rows of the matrix are that row pushed around the cycle.  The
    target is all-cooperate (any symmetric target is all-same).  Results
    agree with ``general_level`` but the LP is tiny even for large n.
    """
    n = game.n
    if generator is None:
        generator = tuple((i + 1) % n for i in range(n))
    powers = _permutation_powers(generator, n)
    _check_symmetry(game, np.asarray(generator, dtype=int))
    _gate_dilemma(game, force)
    target = ActionProfile.all_cooperate(n)
    _warn_if_suboptimal(game, target)

    # step[p] = k with sigma^k(0) = p; var j of row p sits at column sigma^k(j)
    step = np.zeros(n, dtype=int)
    for k in range(n):
        step[int(powers[k][0])] = k
    inverse = [np.argsort(p) for p in powers]

    deltas = [deviation_deltas(game, target, i) for i in range(n)]
    scale = 1.0 + max(float(np.abs(d).max()) for d in deltas)
    atol = feas_tol * scale

    def tile(v):
        t = np.zeros((n, n))
        for k in range(n):
            t[int(powers[k][0]), powers[k]] = v
        return t

    def constraint_row(i, mask):
        row = np.zeros(n)
        for j in range(n):
            row[int(inverse[step[j]][i])] += deltas[i][mask, j]
        return row

    n_co = 1 << (n - 1)
    working = [{0, n_co - 1} for _ in range(n)]
    c = np.zeros(n)
    c[0] = 1.0
    a_eq = np.ones((1, n))
    sol = None
    for _ in range(max_rounds):
        rows = [constraint_row(i, m) for i in range(n) for m in sorted(working[i])]
        lp = LinearProgram(c, a_ub=np.array(rows), b_ub=np.zeros(len(rows)),
                           a_eq=a_eq, b_eq=np.ones(1))
        sol = solve_lp(lp, feas_tol=feas_tol, opt_tol=opt_tol)
        if sol.status is LpStatus.INFEASIBLE:
            raise NotResolvableError(
                f"no transfer contract makes {target} weakly dominant")
        if sol.status is LpStatus.UNBOUNDED:
            raise RuntimeError("fastpath level search reported unbounded")
        t = tile(sol.x)
        additions = _scan_violations(deltas, t, working, atol)
        if not additions:
            break
        for i, masks in additions:
            working[i].update(int(m) for m in masks)
    else:
        raise RuntimeError("constraint generation did not converge")

    matrix = _matrix_from_solution(tile(sol.x).ravel(), n, conserving=True)
    binding = _binding_pairs(deltas, matrix, binding_tol)
    return SelfInterestResult(
        level=float(sol.objective_value),
        matrix=matrix,
        target=target,
        binding=tuple(binding),
        excess=excess_report(matrix),
        mode=SolveMode.GENERAL,
    )


def binding_constraints(game: NormalFormGame,
                        result: SelfInterestResult,
                        tolerance: float = 1e-7) -> list[tuple[int, int]]:
    """Recompute which deviation constraints are tight for a result."""
    deltas = [deviation_deltas(game, result.target, i) for i in range(game.n)]
    return _binding_pairs(deltas, result.matrix, tolerance)
