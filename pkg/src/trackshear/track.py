"""Trivalent train tracks as ribbon graphs.

A switch has three slots.  The *trunk* is the single edge on one side of the
switch tie, *left* and *right* are the two branches on the other side, named
as seen from the trunk for the surface orientation.  Around a switch the
counterclockwise cyclic order of the slots is ``(trunk, right, left)``; this
fixes every left/right and sign convention in the package.

Edges are plain ids with two ends ``0`` and ``1``.  An edge end is referenced
by an :class:`EndRef` and must occupy exactly one slot of one switch.

Oriented tracks additionally carry a divergence flag per switch: ``"L"`` when
the branch pair lies on the left of the oriented tie, ``"R"`` when it lies on
the right.  Orientation covers also carry the deck involution.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator, Literal, Mapping, NamedTuple

SLOTS = ("trunk", "right", "left")  # counterclockwise
Divergence = Literal["L", "R"]


class TrackError(ValueError):
    """Raised when an operation needs a valid track and did not get one."""


class EndRef(NamedTuple):
    edge: str
    end: int


@dataclass(frozen=True)
class Switch:
    id: str
    trunk: EndRef
    left: EndRef
    right: EndRef
    divergence: Divergence | None = None

    def slot(self, name: str) -> EndRef:
        return getattr(self, name)

    def ends(self) -> tuple[EndRef, EndRef, EndRef]:
        return (self.trunk, self.right, self.left)


@dataclass(frozen=True)
class Involution:
    switches: Mapping[str, str]
    edges: Mapping[str, str]


@dataclass(frozen=True)
class TrainTrack:
    """A base track (no flags) or an oriented track (flags, maybe an involution).

    ``tie_transport[e]`` is ``+1`` when the reference tie orientation at the
    switch of end 0 (the one with the branches on its left) transports along
    ``e`` to the reference orientation at the switch of end 1, and ``-1``
    otherwise.  ``None`` means the sign is read off the ribbon structure, see
    :func:`ribbon_tie_transport`.
    """

    switches: tuple[Switch, ...]
    edges: tuple[str, ...]
    tie_transport: Mapping[str, int] | None = None
    involution: Involution | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    @property
    def is_oriented(self) -> bool:
        return bool(self.switches) and all(s.divergence is not None for s in self.switches)

    @property
    def switch_ids(self) -> list[str]:
        return [s.id for s in self.switches]

    def switch(self, sid: str) -> Switch:
        return self._lookup()["switch"][sid]

    def end_location(self, ref: EndRef) -> tuple[str, str]:
        """Return ``(switch id, slot name)`` of an edge end."""
        try:
            return self._lookup()["end"][ref]
        except KeyError:
            raise TrackError(f"edge end {ref} is not attached to a switch") from None

    def edge_index(self, eid: str) -> int:
        return self._lookup()["edge"][eid]

    def signs(self) -> dict[str, int]:
        if self.tie_transport is not None:
            return dict(self.tie_transport)
        return ribbon_tie_transport(self)

    def _lookup(self) -> dict:
        if self._index is None:
            ends = {}
            for s in self.switches:
                for name in SLOTS:
                    ends.setdefault(s.slot(name), (s.id, name))
            index = {
                "switch": {s.id: s for s in self.switches},
                "end": ends,
                "edge": {e: i for i, e in enumerate(self.edges)},
            }
            object.__setattr__(self, "_index", index)
        return self._index


@dataclass
class ValidationReport:
    valid: bool
    violations: list[str]

    def __bool__(self) -> bool:
        return self.valid


@dataclass
class RegionReport:
    regions: list[tuple[int, int]]  # (boundary walk length, cusp count)
    euler_characteristic: int
    genus: int | None  # None when the filled surface is disconnected
    walks: list[list[EndRef]] = field(default_factory=list, repr=False)


def _components(t: TrainTrack) -> list[set[str]]:
    adj: dict[str, set[str]] = defaultdict(set)
    ends: dict[str, list[str]] = defaultdict(list)
    for s in t.switches:
        adj[s.id]
        for ref in s.ends():
            ends[ref.edge].append(s.id)
    for sids in ends.values():
        for a in sids:
            adj[a].update(sids)
    seen: set[str] = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in comp:
                    comp.add(nb)
                    stack.append(nb)
        seen |= comp
        comps.append(comp)
    return comps


def validate_track(t: TrainTrack) -> ValidationReport:
    """Check the combinatorial axioms; violations are returned, never raised."""
    v: list[str] = []
    n_sw, n_ed = len(t.switches), len(t.edges)
    if n_sw == 0:
        v.append("empty track")
    if 2 * n_ed != 3 * n_sw:
        v.append(f"not trivalent: 2*{n_ed} edge ends != 3*{n_sw} switch slots")
    if len(set(t.edges)) != n_ed:
        v.append("duplicate edge ids")
    if len(set(t.switch_ids)) != n_sw:
        v.append("duplicate switch ids")

    edges = set(t.edges)
    used: dict[EndRef, int] = defaultdict(int)
    for s in t.switches:
        refs = s.ends()
        if len(set(refs)) != 3:
            v.append(f"switch {s.id}: trunk, left and right are not distinct edge ends")
        for ref in refs:
            if ref.edge not in edges or ref.end not in (0, 1):
                v.append(f"switch {s.id}: unknown edge end {ref.edge}.{ref.end}")
            used[ref] += 1
    reused = sorted(f"{r.edge}.{r.end}" for r, k in used.items() if k > 1)
    if reused:
        v.append("slot reuse: " + ", ".join(reused))
    missing = sorted(f"{e}.{j}" for e in edges for j in (0, 1) if EndRef(e, j) not in used)
    if missing:
        v.append("unattached edge ends: " + ", ".join(missing))

    flags = [s.divergence for s in t.switches]
    if any(f is not None for f in flags) and any(f is None for f in flags):
        v.append("divergence flags on some switches only")
    if any(f not in (None, "L", "R") for f in flags):
        v.append("divergence flag must be 'L' or 'R'")

    if t.tie_transport is not None:
        if set(t.tie_transport) != edges:
            v.append("tie_transport must give a sign for every edge")
        if any(x not in (1, -1) for x in t.tie_transport.values()):
            v.append("tie_transport signs must be +1 or -1")

    if v:
        return ValidationReport(False, v)

    comps = _components(t)
    if t.involution is None:
        if len(comps) != 1:
            v.append(f"not connected ({len(comps)} components)")
    else:
        v.extend(_involution_violations(t))
    return ValidationReport(not v, v)


def _involution_violations(t: TrainTrack) -> list[str]:
    inv = t.involution
    v = []
    if set(inv.switches) != set(t.switch_ids) or set(inv.edges) != set(t.edges):
        return ["involution is not defined on every switch and edge"]
    for kind, m in (("switch", inv.switches), ("edge", inv.edges)):
        for x, y in m.items():
            if x == y:
                v.append(f"involution fixes {kind} {x}")
            elif m.get(y) != x:
                v.append(f"involution is not self-inverse on {kind} {x}")
    if v:
        return v
    for s in t.switches:
        img = t.switch(inv.switches[s.id])
        for name in SLOTS:
            ref, iref = s.slot(name), img.slot(name)
            if inv.edges[ref.edge] != iref.edge or ref.end != iref.end:
                v.append(f"involution does not carry {name} of {s.id} to {name} of {img.id}")
        if t.is_oriented and s.divergence == img.divergence:
            v.append(f"involution does not flip the divergence flag at {s.id}")
    return v


def _require_valid(t: TrainTrack) -> None:
    report = validate_track(t)
    if not report.valid:
        raise TrackError("invalid track: " + "; ".join(report.violations))


def ribbon_tie_transport(t: TrainTrack) -> dict[str, int]:
    """Tie transport signs forced by the ribbon structure of an oriented surface.

    Take the reference tie orientation at each switch to be the one with the
    branches on its left.  Carrying it along an edge that joins a trunk end
    to a branch end lands on the reference orientation again (+1); an edge
    joining two trunk ends or two branch ends reverses it (-1).
    """
    out = {}
    for e in t.edges:
        kinds = [t.end_location(EndRef(e, j))[1] == "trunk" for j in (0, 1)]
        out[e] = 1 if kinds[0] != kinds[1] else -1
    return out


def _sheet_labels(t: TrainTrack) -> dict[str, int] | None:
    """Two-colour switches so that every edge sign is the colour ratio."""
    signs = t.signs()
    label: dict[str, int] = {}
    nbrs: dict[str, list[tuple[str, int]]] = defaultdict(list)
    for e in t.edges:
        a = t.end_location(EndRef(e, 0))[0]
        b = t.end_location(EndRef(e, 1))[0]
        nbrs[a].append((b, signs[e]))
        nbrs[b].append((a, signs[e]))
    for start in t.switch_ids:
        if start in label:
            continue
        label[start] = 1
        stack = [start]
        while stack:
            x = stack.pop()
            for y, sg in nbrs[x]:
                want = label[x] * sg
                if y not in label:
                    label[y] = want
                    stack.append(y)
                elif label[y] != want:
                    return None
    return label


def is_orientable(b: TrainTrack) -> bool:
    """True iff the tie transport signs multiply to +1 around every cycle."""
    _require_valid(b)
    return _sheet_labels(b) is not None


def lift_id(sid: str, sheet: int) -> str:
    return f"{sid}{'+' if sheet > 0 else '-'}"


def orientation_cover(b: TrainTrack) -> TrainTrack:
    """Build the 2-fold cover on which the ties are coherently oriented.

    Switch ``s`` lifts to ``s+`` (tie oriented with the branches on its left,
    flag ``"L"``) and ``s-`` (flag ``"R"``).  Edge ``e`` lifts to ``e+`` and
    ``e-``, named after the sheet of their end 0; the sheet at end 1 is the
    end-0 sheet times the tie transport sign of ``e``.  Slot names are copied
    since the cover inherits the surface orientation.
    """
    _require_valid(b)
    if b.is_oriented or b.involution is not None:
        raise TrackError("track is already oriented")
    signs = b.signs()
    switches = []
    for sheet in (1, -1):
        for s in b.switches:
            def lift(ref: EndRef) -> EndRef:
                if ref.end == 0:
                    return EndRef(lift_id(ref.edge, sheet), 0)
                # the lift whose end 1 lies on this sheet starts on sheet * sign
                return EndRef(lift_id(ref.edge, sheet * signs[ref.edge]), 1)

            switches.append(
                Switch(
                    id=lift_id(s.id, sheet),
                    trunk=lift(s.trunk),
                    left=lift(s.left),
                    right=lift(s.right),
                    divergence="L" if sheet > 0 else "R",
                )
            )
    edges = tuple(lift_id(e, sh) for sh in (1, -1) for e in b.edges)
    swap = {"+": "-", "-": "+"}
    inv = Involution(
        switches={lift_id(s, sh): lift_id(s, -sh) for s in b.switch_ids for sh in (1, -1)},
        edges={e: e[:-1] + swap[e[-1]] for e in edges},
    )
    transport = {lift_id(e, sh): signs[e] for sh in (1, -1) for e in b.edges}
    return TrainTrack(tuple(switches), edges, transport, inv)


def quotient(c: TrainTrack) -> TrainTrack:
    """Recover the base track of a cover built by :func:`orientation_cover`."""
    if c.involution is None:
        raise TrackError("track has no involution")
    base_switches = []
    for s in c.switches:
        if not s.id.endswith("+"):
            continue
        trunk, left, right = (EndRef(r.edge[:-1], r.end) for r in (s.trunk, s.left, s.right))
        base_switches.append(Switch(s.id[:-1], trunk, left, right))
    edges = tuple(e[:-1] for e in c.edges if e.endswith("+"))
    transport = {e: c.tie_transport[e + "+"] for e in edges} if c.tie_transport else None
    return TrainTrack(tuple(base_switches), edges, transport)


def connected_components(t: TrainTrack) -> int:
    return len(_components(t))


def _rotation(t: TrainTrack) -> dict[EndRef, EndRef]:
    """Counterclockwise successor of each edge end around its switch."""
    rot = {}
    for s in t.switches:
        ends = s.ends()
        for i in range(3):
            rot[ends[i]] = ends[(i + 1) % 3]
    return rot


def boundary_walks(t: TrainTrack) -> Iterator[tuple[list[EndRef], int]]:
    """Yield each boundary walk of the ribbon neighbourhood with its cusp count.

    A walk enters a switch along an edge end ``h`` and leaves along the
    counterclockwise successor of ``h``.  The corner from the right branch to
    the left branch is the cusp of that switch.
    """
    rot = _rotation(t)
    cusp_corners = {(s.right, s.left) for s in t.switches}
    seen: set[EndRef] = set()
    for start in sorted(rot):
        if start in seen:
            continue
        walk, cusps = [], 0
        h = start
        while h not in seen:
            seen.add(h)
            walk.append(h)
            arrive = EndRef(h.edge, 1 - h.end)
            nxt = rot[arrive]
            if (arrive, nxt) in cusp_corners:
                cusps += 1
            h = nxt
        yield walk, cusps


def region_analysis(t: TrainTrack) -> RegionReport:
    _require_valid(t)
    walks = list(boundary_walks(t))
    chi = len(t.switches) - len(t.edges) + len(walks)
    genus = (2 - chi) // 2 if connected_components(t) == 1 else None
    return RegionReport(
        regions=[(len(w), c) for w, c in walks],
        euler_characteristic=chi,
        genus=genus,
        walks=[w for w, _ in walks],
    )


def check_maximal_carrying(t: TrainTrack) -> bool:
    """True iff every complementary region is a trigon (exactly three cusps)."""
    return all(c == 3 for _, c in region_analysis(t).regions)
