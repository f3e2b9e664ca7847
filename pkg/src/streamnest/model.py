"""Temporal-forest data model.

A dataset is a JSON document describing one tree per timestep plus optional
cross-timestep links:

    {
      "timeAxis": [0, 1, 2],              # optional, strictly increasing
      "timesteps": [
        {"nodes": [
          {"id": "a", "parent": null, "value": 3.0, "order": 0,
           "prev": ["a"], "next": ["a", "a2"], "pos": 1.5},
          ...
        ]},
        ...
      ]
    }

Only "id" is required per node.  "parent" defaults to null (top level),
"order" to the input sequence, "value" to nothing (leaves default to 1 during
layout).  "prev"/"next" list ids in the adjacent snapshots; when absent, a
node is linked to the same-id node of the previous snapshot.  "pos" pins the
node's start offset inside its parent instead of computed spacing.

Error taxonomy:

* ParseError      -- malformed JSON or document shape (reports position).
* StructureError  -- a snapshot is not a forest of trees (cycles, duplicate
                     ids, unknown parents, negative values, ...); names the
                     offending node.
* LinkError       -- dangling or contradictory prev/next declarations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

ARTIFICIAL_ROOT_ID = "__root__"


class DatasetError(ValueError):
    """Base class for dataset rejections."""


class ParseError(DatasetError):
    pass


class StructureError(DatasetError):
    pass


class LinkError(DatasetError):
    pass


@dataclass(slots=True, eq=False)
class TemporalNode:
    """One node occurrence at one timestep."""

    id: str
    t: int
    seq: int                            # input position within the snapshot
    parent: "TemporalNode | None" = None
    children: list["TemporalNode"] = field(default_factory=list)
    order_key: float | None = None      # raw "order" value, seq when absent
    order_index: int = 0                # resolved 0-based index among siblings
    own_value: float | None = None
    explicit_pos: float | None = None
    raw_prev: list[str] | None = None
    raw_next: list[str] | None = None
    prev: list["TemporalNode"] = field(default_factory=list)
    next: list["TemporalNode"] = field(default_factory=list)
    depth: int = 0
    is_artificial: bool = False
    # filled by layout
    aggregate: float = 0.0
    size: float = 0.0
    pos: float = 0.0

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<node {self.id!r}@{self.t}>"

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def ancestors(self) -> Iterator["TemporalNode"]:
        """Walk parent chain from immediate parent to the root."""
        p = self.parent
        while p is not None:
            yield p
            p = p.parent


@dataclass(slots=True)
class TreeSnapshot:
    t: int
    nodes: list[TemporalNode]           # document order, artificial root last
    by_id: dict[str, TemporalNode]
    root: TemporalNode
    max_depth: int


@dataclass(slots=True)
class TemporalForest:
    snapshots: list[TreeSnapshot]
    time_axis: list[float]
    linked: bool = False

    @property
    def node_count(self) -> int:
        return sum(len(s.nodes) for s in self.snapshots)

    def iter_nodes(self) -> Iterator[TemporalNode]:
        for snap in self.snapshots:
            yield from snap.nodes


# ---------- Parsing ----------

def parse_dataset(raw: bytes | bytearray | str) -> TemporalForest:
    """Parse and validate a dataset document.

    Accepts UTF-8 bytes or text.  Returns an unlinked forest; run
    link_across_time before classification or layout.
    """
    if isinstance(raw, (bytes, bytearray)):
        try:
            text = bytes(raw).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8 at byte {exc.start}") from exc
    else:
        text = raw
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return forest_from_document(doc)


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise ParseError(msg)


def _opt_number(entry: dict, key: str, t: int, node_id: str) -> float | None:
    v = entry.get(key)
    if v is None:
        return None
    _expect(isinstance(v, (int, float)) and not isinstance(v, bool),
            f"node '{node_id}' at timestep {t}: '{key}' must be a number")
    return float(v)


def _opt_id_list(entry: dict, key: str, t: int, node_id: str) -> list[str] | None:
    v = entry.get(key)
    if v is None:
        return None
    _expect(isinstance(v, list) and all(isinstance(x, str) for x in v),
            f"node '{node_id}' at timestep {t}: '{key}' must be a list of ids")
    return list(v)


def forest_from_document(doc: Any) -> TemporalForest:
    """Build a validated forest from an already-decoded JSON document."""
    _expect(isinstance(doc, dict), "document must be a JSON object")
    timesteps = doc.get("timesteps")
    _expect(isinstance(timesteps, list), "document must contain a 'timesteps' list")

    snapshots = [_parse_snapshot(entry, t) for t, entry in enumerate(timesteps)]

    axis_raw = doc.get("timeAxis")
    if axis_raw is None:
        time_axis = [float(i) for i in range(len(snapshots))]
    else:
        _expect(isinstance(axis_raw, list)
                and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                        for x in axis_raw),
                "'timeAxis' must be a list of numbers")
        _expect(len(axis_raw) == len(snapshots),
                f"'timeAxis' length {len(axis_raw)} does not match "
                f"{len(snapshots)} timesteps")
        time_axis = [float(x) for x in axis_raw]
        for a, b in zip(time_axis, time_axis[1:]):
            _expect(a < b, "'timeAxis' must be strictly increasing")

    return TemporalForest(snapshots=snapshots, time_axis=time_axis)


def _parse_snapshot(entry: Any, t: int) -> TreeSnapshot:
    _expect(isinstance(entry, dict), f"timestep {t} must be an object")
    raw_nodes = entry.get("nodes")
    _expect(isinstance(raw_nodes, list), f"timestep {t} must contain a 'nodes' list")
    if not raw_nodes:
        raise StructureError(f"timestep {t} has no nodes")

    nodes: list[TemporalNode] = []
    by_id: dict[str, TemporalNode] = {}
    parents: dict[str, str] = {}
    for seq, raw in enumerate(raw_nodes):
        _expect(isinstance(raw, dict), f"timestep {t} node {seq} must be an object")
        nid = raw.get("id")
        _expect(isinstance(nid, str) and nid != "",
                f"timestep {t} node {seq} needs a non-empty string 'id'")
        if nid in by_id:
            raise StructureError(f"duplicate id '{nid}' at timestep {t}")
        parent = raw.get("parent")
        _expect(parent is None or isinstance(parent, str),
                f"node '{nid}' at timestep {t}: 'parent' must be an id or null")
        value = _opt_number(raw, "value", t, nid)
        if value is not None and value < 0:
            raise StructureError(f"node '{nid}' at timestep {t} has negative value")
        pos = _opt_number(raw, "pos", t, nid)
        if pos is not None and pos < 0:
            raise StructureError(f"node '{nid}' at timestep {t} has negative pos")
        order = _opt_number(raw, "order", t, nid)
        node = TemporalNode(
            id=nid, t=t, seq=seq,
            order_key=order if order is not None else float(seq),
            own_value=value, explicit_pos=pos,
            raw_prev=_opt_id_list(raw, "prev", t, nid),
            raw_next=_opt_id_list(raw, "next", t, nid),
        )
        nodes.append(node)
        by_id[nid] = node
        if parent is not None:
            parents[nid] = parent

    top: list[TemporalNode] = []
    for node in nodes:
        pid = parents.get(node.id)
        if pid is None:
            top.append(node)
            continue
        p = by_id.get(pid)
        if p is None:
            raise StructureError(
                f"node '{node.id}' at timestep {t} references unknown parent '{pid}'")
        if p is node:
            raise StructureError(f"node '{node.id}' at timestep {t} is its own parent")
        node.parent = p
        p.children.append(node)

    if not top:
        raise StructureError(f"timestep {t} has no top-level node (parent cycle)")

    if len(top) == 1 and not top[0].is_artificial:
        root = top[0]
    else:
        if ARTIFICIAL_ROOT_ID in by_id:
            raise StructureError(
                f"id '{ARTIFICIAL_ROOT_ID}' is reserved but appears alongside "
                f"multiple top-level nodes at timestep {t}")
        root = TemporalNode(id=ARTIFICIAL_ROOT_ID, t=t, seq=len(nodes),
                            order_key=float(len(nodes)), is_artificial=True)
        for node in top:
            node.parent = root
        root.children = list(top)
        nodes.append(root)
        by_id[ARTIFICIAL_ROOT_ID] = root

    # Sibling order: "order" key, ties broken by input sequence.
    for node in nodes:
        if node.children:
            node.children.sort(key=lambda c: (c.order_key, c.seq))
            for i, child in enumerate(node.children):
                child.order_index = i

    # Depths via traversal from the root; unreached nodes sit on a cycle.
    max_depth = 0
    reached = 0
    stack = [root]
    seen = {id(root)}
    while stack:
        node = stack.pop()
        reached += 1
        if node.depth > max_depth:
            max_depth = node.depth
        for child in node.children:
            if id(child) in seen:
                raise StructureError(
                    f"node '{child.id}' at timestep {t} has multiple parents")
            seen.add(id(child))
            child.depth = node.depth + 1
            stack.append(child)
    if reached != len(nodes):
        bad = next(n for n in nodes if id(n) not in seen)
        raise StructureError(
            f"node '{bad.id}' at timestep {t} sits on a parent cycle")

    _check_declared_values(nodes, t)
    return TreeSnapshot(t=t, nodes=nodes, by_id=by_id, root=root, max_depth=max_depth)


def _check_declared_values(nodes: list[TemporalNode], t: int) -> None:
    # A declared value must cover the children's unpadded totals (leaves
    # default to 1); padding only grows aggregates, so this rejection is
    # independent of the padding mode chosen later.
    raw_size: dict[int, float] = {}
    for node in sorted(nodes, key=lambda n: -n.depth):
        agg = sum(raw_size[id(c)] for c in node.children)
        if node.is_leaf:
            size = node.own_value if node.own_value is not None else 1.0
        elif node.own_value is not None:
            if node.own_value < agg:
                raise StructureError(
                    f"node '{node.id}' at timestep {t} declares value "
                    f"{node.own_value} smaller than its children's total {agg}")
            size = node.own_value
        else:
            size = agg
        raw_size[id(node)] = size


# ---------- Cross-timestep linking ----------

def link_across_time(forest: TemporalForest) -> TemporalForest:
    """Resolve prev/next declarations into node links.

    Explicit lists are authoritative; a node without an explicit "prev" is
    linked to the same-id node of the previous snapshot unless that node
    declares an explicit "next" that omits it.  Raises LinkError for ids that
    do not exist in the adjacent snapshot and for contradictions between two
    explicit declarations.
    """
    for prev_snap, snap in zip(forest.snapshots, forest.snapshots[1:]):
        links: set[tuple[int, int]] = set()
        pairs: list[tuple[TemporalNode, TemporalNode]] = []

        def add(m: TemporalNode, n: TemporalNode) -> None:
            key = (id(m), id(n))
            if key not in links:
                links.add(key)
                pairs.append((m, n))

        for n in snap.nodes:
            if n.raw_prev is None:
                continue
            for pid in n.raw_prev:
                m = prev_snap.by_id.get(pid)
                if m is None:
                    raise LinkError(
                        f"node '{n.id}' at timestep {n.t} references missing "
                        f"predecessor '{pid}'")
                if m.raw_next is not None and n.id not in m.raw_next:
                    raise LinkError(
                        f"link contradiction between '{m.id}' at timestep {m.t} "
                        f"and '{n.id}' at timestep {n.t}: 'prev' names the link "
                        f"but 'next' omits it")
                add(m, n)
        for m in prev_snap.nodes:
            if m.raw_next is None:
                continue
            for nid in m.raw_next:
                n = snap.by_id.get(nid)
                if n is None:
                    raise LinkError(
                        f"node '{m.id}' at timestep {m.t} references missing "
                        f"successor '{nid}'")
                if n.raw_prev is not None and m.id not in n.raw_prev:
                    raise LinkError(
                        f"link contradiction between '{m.id}' at timestep {m.t} "
                        f"and '{n.id}' at timestep {n.t}: 'next' names the link "
                        f"but 'prev' omits it")
                add(m, n)
        for n in snap.nodes:
            if n.raw_prev is not None:
                continue
            m = prev_snap.by_id.get(n.id)
            if m is not None and m.raw_next is None:
                add(m, n)

        pairs.sort(key=lambda mn: (mn[0].seq, mn[1].seq))
        for m, n in pairs:
            m.next.append(n)
            n.prev.append(m)

    forest.linked = True
    return forest


def load_forest(raw: bytes | bytearray | str | dict) -> TemporalForest:
    """Raw JSON or an already-decoded document, parsed and linked."""
    if isinstance(raw, dict):
        return link_across_time(forest_from_document(raw))
    return link_across_time(parse_dataset(raw))


# ---------- Change classification ----------

@dataclass(frozen=True, slots=True)
class Add:
    node: str


@dataclass(frozen=True, slots=True)
class Remove:
    node: str


@dataclass(frozen=True, slots=True)
class Split:
    source: str
    targets: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Merge:
    sources: tuple[str, ...]
    target: str


@dataclass(frozen=True, slots=True)
class MoveWithin:
    node: str
    old_index: int
    new_index: int


@dataclass(frozen=True, slots=True)
class MoveAcross:
    node: str
    old_parent: str | None              # None means top level
    new_parent: str | None


@dataclass(frozen=True, slots=True)
class AncestorInversion:
    node: str                           # id at from-timestep
    former_ancestor: str


ChangeEvent = Add | Remove | Split | Merge | MoveWithin | MoveAcross | AncestorInversion

_EVENT_RANK = {Add: 0, Remove: 1, Split: 2, Merge: 3,
               MoveWithin: 4, MoveAcross: 5, AncestorInversion: 6}


def event_sort_key(ev: ChangeEvent) -> tuple:
    return (_EVENT_RANK[type(ev)],) + tuple(
        getattr(ev, f) if getattr(ev, f) is not None else ""
        for f in ev.__dataclass_fields__)


@dataclass(slots=True)
class ChangeSet:
    from_t: int
    to_t: int
    events: list[ChangeEvent]


def _effective_parent(node: TemporalNode) -> TemporalNode | None:
    """Parent with the artificial root treated as top level."""
    p = node.parent
    if p is not None and p.is_artificial:
        return None
    return p


def classify_changes(forest: TemporalForest) -> list[ChangeSet]:
    """Classify structural changes between every consecutive snapshot pair.

    Artificial roots never appear in events.  Moves are detected per link, so
    a node that both splits and changes parent reports both events.
    """
    if not forest.linked:
        raise LinkError("forest is not linked; call link_across_time first")
    out: list[ChangeSet] = []
    for prev_snap, snap in zip(forest.snapshots, forest.snapshots[1:]):
        events: list[ChangeEvent] = []
        for n in snap.nodes:
            if n.is_artificial:
                continue
            if not n.prev:
                events.append(Add(n.id))
            elif len(n.prev) >= 2:
                events.append(Merge(tuple(m.id for m in n.prev), n.id))
        for m in prev_snap.nodes:
            if m.is_artificial:
                continue
            if not m.next:
                events.append(Remove(m.id))
            elif len(m.next) >= 2:
                events.append(Split(m.id, tuple(n.id for n in m.next)))
        for m in prev_snap.nodes:
            if m.is_artificial:
                continue
            for n in m.next:
                if n.is_artificial:
                    continue
                events.extend(_classify_move(m, n))
        events.extend(detect_ancestor_inversions(prev_snap, snap))
        events.sort(key=event_sort_key)
        out.append(ChangeSet(from_t=prev_snap.t, to_t=snap.t, events=events))
    return out


def _classify_move(m: TemporalNode, n: TemporalNode) -> list[ChangeEvent]:
    old_p = _effective_parent(m)
    new_p = _effective_parent(n)
    if old_p is None and new_p is None:
        same_parent = True
    elif old_p is None or new_p is None:
        same_parent = False
    else:
        same_parent = new_p in old_p.next
    if same_parent:
        if m.order_index != n.order_index:
            return [MoveWithin(n.id, m.order_index, n.order_index)]
        return []
    return [MoveAcross(n.id,
                       old_p.id if old_p is not None else None,
                       new_p.id if new_p is not None else None)]


def detect_ancestor_inversions(from_snap: TreeSnapshot,
                               to_snap: TreeSnapshot) -> list[AncestorInversion]:
    """Find pairs (n, m) where m is an ancestor of n in from_snap and a
    successor of n is an ancestor of a successor of m in to_snap."""
    anc: dict[int, frozenset[str]] = {}

    def ancestors_at_to(node: TemporalNode) -> frozenset[str]:
        got = anc.get(id(node))
        if got is None:
            if node.parent is None:
                got = frozenset()
            else:
                got = ancestors_at_to(node.parent) | {node.parent.id}
            anc[id(node)] = got
        return got

    events: list[AncestorInversion] = []
    for n in from_snap.nodes:
        if n.is_artificial or not n.next:
            continue
        succ_ids = {s.id for s in n.next}
        for m in n.ancestors():
            if m.is_artificial or not m.next:
                continue
            if any(succ_ids & ancestors_at_to(sm) for sm in m.next):
                events.append(AncestorInversion(n.id, m.id))
    return events


# ---------- Document helpers ----------

def document_from_forest(forest: TemporalForest) -> dict:
    """Serialize a forest back into the dataset document shape."""
    steps = []
    for snap in forest.snapshots:
        nodes = []
        for n in snap.nodes:
            if n.is_artificial:
                continue
            entry: dict[str, Any] = {"id": n.id}
            if n.parent is not None and not n.parent.is_artificial:
                entry["parent"] = n.parent.id
            if n.own_value is not None:
                entry["value"] = n.own_value
            if n.raw_prev is not None:
                entry["prev"] = list(n.raw_prev)
            if n.raw_next is not None:
                entry["next"] = list(n.raw_next)
            nodes.append(entry)
        steps.append({"nodes": nodes})
    return {"timeAxis": list(forest.time_axis), "timesteps": steps}


def canonical_document_text(doc: Any) -> str:
    """Stable text form of a document, used as a cache key."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))
