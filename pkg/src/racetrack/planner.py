"""Reorder planning: turn an ion arrangement into one where requested
qubit pairs sit adjacent in combined (gate-ready) form.

The planner is greedy and deterministic.  It first tries single boundary
exchanges (the cheap move the hardware offers between adjacent crystals);
if those cannot satisfy all targets it falls back to splitting stray
pairs and bubble-sorting singles into a computed final order.  In
circulation mode the positional moves can ride a track circulation (they
cost a lap instead of per-exchange time), and the planner returns
whichever candidate is cheapest.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .ions import Crystal, IonState, ReorderOp, ReorderTag, apply_plan, apply_reorder
from .machine import TimingParams, TrackLayout, lap_time


class PlanMode(Enum):
    CIRCULATION_ALLOWED = "circulation"
    ONE_DIMENSIONAL = "one_dimensional"


@dataclass(frozen=True)
class ReorderPlan:
    ops: tuple[ReorderOp, ...]
    path_id: int | None          # circulation path carrying the moves, or None
    time: float                  # charged wall-clock time of the plan
    hidden_time: float           # positional-move time hidden under the lap
    final: IonState

    @property
    def n_ops(self) -> int:
        return len(self.ops)


def _op(tag: ReorderTag, state: IonState, index: int) -> ReorderOp:
    cs = state.crystals
    qubits: tuple[int, ...] = cs[index].qubits if index < len(cs) else ()
    if tag in (ReorderTag.PAIR_EXCHANGE, ReorderTag.COMBINE) and index + 1 < len(cs):
        qubits = qubits + cs[index + 1].qubits
    return ReorderOp(tag=tag, operands=qubits, index=index)


def staged_time(
    ops: list[ReorderOp], zones: int, t: TimingParams = TimingParams()
) -> float:
    """Serialize ops into stages: ops touching disjoint crystal slots run
    in parallel, at most `zones` per stage; a stage costs its longest op."""
    durations = {
        ReorderTag.SPLIT: t.split_or_combine,
        ReorderTag.COMBINE: t.split_or_combine,
        ReorderTag.SWAP: t.swap,
        ReorderTag.INTRA_SHIFT: t.intra_zone_shift,
        ReorderTag.INTER_SHIFT: t.inter_zone_shift,
        ReorderTag.PAIR_EXCHANGE: t.pair_exchange,
    }
    total = 0.0
    busy: set[int] = set()
    stage_max = 0.0
    stage_n = 0
    for op in ops:
        slots = {op.index, op.index + 1}
        if stage_n >= max(1, zones) or (busy & slots):
            total += stage_max
            busy, stage_max, stage_n = set(), 0.0, 0
        busy |= slots
        stage_max = max(stage_max, durations[op.tag])
        stage_n += 1
    return total + stage_max


def _try_boundary_exchanges(
    s: IonState, targets: list[tuple[int, int]]
) -> list[ReorderOp] | None:
    """Satisfy every target with at most one boundary exchange each, never
    disturbing a pair another target needs.  Returns None if impossible."""
    ops: list[ReorderOp] = []
    state = s
    for a, b in targets:
        if state.paired(a, b):
            continue
        ia, ib = state.crystal_of(a), state.crystal_of(b)
        if abs(ia - ib) != 1:
            return None
        left = min(ia, ib)
        candidate = _op(ReorderTag.PAIR_EXCHANGE, state, left)
        nxt, _ = apply_reorder(state, candidate)
        if not nxt.paired(a, b):
            return None
        # the exchange must not break pairs that other targets rely on
        wanted = {frozenset(p) for p in targets}
        before = {frozenset(p) for p in state.pairs() if frozenset(p) in wanted}
        after = {frozenset(p) for p in nxt.pairs() if frozenset(p) in wanted}
        if not (before <= after):
            return None
        ops.append(candidate)
        state = nxt
    # verify everything held up
    for a, b in targets:
        if not state.paired(a, b):
            return None
    return ops


def _fallback_plan(s: IonState, targets: list[tuple[int, int]]) -> list[ReorderOp]:
    """Per-target bubble routing: free the members, bubble the cheaper one
    next to its partner (splitting any pair in the way), orient, combine."""
    wanted = {frozenset(p) for p in targets}
    ops: list[ReorderOp] = []
    state = s

    def do(tag: ReorderTag, index: int):
        nonlocal state
        op = _op(tag, state, index)
        state, _ = apply_reorder(state, op)
        ops.append(op)

    def free(q: int):
        """Split q out of a crystal pair that is not a wanted target pair."""
        i = state.crystal_of(q)
        c = state.crystals[i]
        if c.is_pair and frozenset(c.qubits) not in wanted:
            do(ReorderTag.SPLIT, i)

    for a, b in sorted(targets, key=lambda p: min(p)):
        if state.paired(a, b):
            continue
        free(a)
        free(b)
        if state.crystal_of(a) > state.crystal_of(b):
            a, b = b, a
        mover, dest = b, a  # bubble the right member leftward (deterministic)
        while True:
            im, id_ = state.crystal_of(mover), state.crystal_of(dest)
            if abs(im - id_) == 1:
                break
            step = im - 1 if im > id_ else im + 1
            blocker = state.crystals[step]
            if blocker.is_pair:
                do(ReorderTag.SPLIT, step)
                continue
            do(ReorderTag.PAIR_EXCHANGE, min(im, step))
        # orient (left ->, right <-) and combine
        left = min(state.crystal_of(a), state.crystal_of(b))
        if not state.crystals[left].facing_right:
            do(ReorderTag.SWAP, left)
        if state.crystals[left + 1].facing_right:
            do(ReorderTag.SWAP, left + 1)
        do(ReorderTag.COMBINE, left)
    # restore any wanted pair broken while being crossed
    for a, b in sorted(targets, key=lambda p: min(p)):
        if state.paired(a, b):
            continue
        ia, ib = state.crystal_of(a), state.crystal_of(b)
        if abs(ia - ib) != 1:  # pragma: no cover - crossings keep them adjacent
            raise AssertionError("split target pair drifted apart")
        left = min(ia, ib)
        if not state.crystals[left].facing_right:
            do(ReorderTag.SWAP, left)
        if state.crystals[left + 1].facing_right:
            do(ReorderTag.SWAP, left + 1)
        do(ReorderTag.COMBINE, left)
    return ops


def plan_reorder(
    s: IonState,
    target_pairs: list[tuple[int, int]],
    layout: TrackLayout,
    mode: PlanMode = PlanMode.CIRCULATION_ALLOWED,
    t: TimingParams = TimingParams(),
) -> ReorderPlan:
    """Plan primitives making every target pair adjacent and combined.

    In circulation mode, candidates are evaluated per circulation path
    (positional exchanges ride the lap; only regrouping is charged beyond
    it) as well as purely one-dimensionally; the cheapest wins, ties going
    to fewer ops then lower first qubit id.
    """
    flat: list[int] = [q for p in target_pairs for q in p]
    if len(set(flat)) != len(flat):
        raise ValueError("target pairs must be disjoint")
    known = s.qubits()
    for q in flat:
        if q not in known:
            raise KeyError(f"qubit {q} not present in arrangement")

    targets = sorted((tuple(p) for p in target_pairs), key=lambda p: min(p))
    quick = _try_boundary_exchanges(s, targets)
    ops = quick if quick is not None else _fallback_plan(s, targets)
    final, _ = apply_plan(s, ops)

    positional = [o for o in ops if o.tag is ReorderTag.PAIR_EXCHANGE]
    regroup = [o for o in ops if o.tag is not ReorderTag.PAIR_EXCHANGE]
    time_1d = staged_time(ops, layout.gate_zones, t) if ops else 0.0

    candidates: list[tuple[float, int, int, int | None, float]] = [
        (time_1d, len(ops), min(flat, default=0), None, 0.0)
    ]
    if mode is PlanMode.CIRCULATION_ALLOWED:
        for pid, _length in layout.circulation_paths:
            lap = lap_time(layout, pid, t)
            regroup_time = staged_time(regroup, layout.reorder_zones, t) if regroup else 0.0
            hidden = staged_time(positional, layout.reorder_zones, t) if positional else 0.0
            charged = max(lap, regroup_time)
            candidates.append((charged, len(ops), min(flat, default=0), pid, hidden))
    candidates.sort(key=lambda c: (c[0], c[1], c[2], -1 if c[3] is None else c[3]))
    best = candidates[0]
    return ReorderPlan(
        ops=tuple(ops), path_id=best[3], time=best[0], hidden_time=best[4], final=final
    )
