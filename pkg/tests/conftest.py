"""Shared helpers: document builders, a random forest generator, an
independent brute-force change classifier, and SVG path scrapers."""

from __future__ import annotations

import math
import random
import re

import pytest

from streamnest.model import (TemporalForest, link_across_time,
                              forest_from_document)


# ---------- Document builders ----------

def node(nid, parent=None, value=None, order=None, prev=None, nxt=None, pos=None):
    entry = {"id": nid}
    if parent is not None:
        entry["parent"] = parent
    if value is not None:
        entry["value"] = value
    if order is not None:
        entry["order"] = order
    if prev is not None:
        entry["prev"] = prev
    if nxt is not None:
        entry["next"] = nxt
    if pos is not None:
        entry["pos"] = pos
    return entry


def doc(*steps, time_axis=None):
    d = {"timesteps": [{"nodes": list(nodes)} for nodes in steps]}
    if time_axis is not None:
        d["timeAxis"] = time_axis
    return d


def load(document) -> TemporalForest:
    return link_across_time(forest_from_document(document))


# ---------- Random evolving forests ----------

def random_document(rng: random.Random, max_nodes: int = 6,
                    max_steps: int = 3, p_value: float = 0.3,
                    p_order: float = 0.3, p_links: float = 0.35) -> dict:
    """Valid-by-construction random dataset.

    Ids persist with probability 0.6 (implicit links); occasionally explicit
    split/merge links are written on both sides so no contradictions arise.
    Declared values are lifted above children totals afterwards.
    """
    serial = 0

    def fresh():
        nonlocal serial
        serial += 1
        return f"x{serial}"

    steps = []
    prev_ids: list[str] = []
    for _ in range(rng.randint(1, max_steps)):
        count = rng.randint(1, max_nodes)
        pool = list(prev_ids)
        ids = []
        for _ in range(count):
            if pool and rng.random() < 0.6:
                ids.append(pool.pop(rng.randrange(len(pool))))
            else:
                ids.append(fresh())
        rng.shuffle(ids)
        entries = []
        for i, nid in enumerate(ids):
            parent = rng.choice([None] + ids[:i]) if i else None
            e = {"id": nid}
            if parent is not None:
                e["parent"] = parent
            if rng.random() < p_order:
                e["order"] = rng.randint(0, 9)
            if rng.random() < p_value:
                e["value"] = round(rng.uniform(0.0, 5.0), 3)
            entries.append(e)
        steps.append(entries)
        prev_ids = ids

    # explicit split/merge links, both sides declared
    explicit: dict[tuple[int, str], dict[str, list[str]]] = {}
    for t in range(1, len(steps)):
        if rng.random() > p_links:
            continue
        prev_entries = steps[t - 1]
        cur_entries = steps[t]
        if rng.random() < 0.5 and len(cur_entries) >= 2:
            src = rng.choice(prev_entries)["id"]
            targets = [e["id"] for e in rng.sample(cur_entries,
                                                   rng.randint(2, len(cur_entries)))]
            explicit.setdefault((t - 1, src), {}).setdefault("next", []).extend(targets)
            for tgt in targets:
                explicit.setdefault((t, tgt), {}).setdefault("prev", []).append(src)
        elif len(prev_entries) >= 2:
            tgt = rng.choice(cur_entries)["id"]
            sources = [e["id"] for e in rng.sample(prev_entries,
                                                   rng.randint(2, len(prev_entries)))]
            explicit.setdefault((t, tgt), {}).setdefault("prev", []).extend(sources)
            for src in sources:
                explicit.setdefault((t - 1, src), {}).setdefault("next", []).append(tgt)
    for (t, nid), lists in explicit.items():
        for e in steps[t]:
            if e["id"] == nid:
                for key, vals in lists.items():
                    e[key] = sorted(set(e.get(key, []) + vals))

    # declared values must cover children totals under any padding mode;
    # 3 + #children bounds auto (1 + #children) and small constants
    for entries in steps:
        children: dict[str, list[dict]] = {}
        for e in entries:
            children.setdefault(e.get("parent"), []).append(e)

        def padded_bound(e) -> float:
            kids = children.get(e["id"], [])
            if not kids:
                return e.get("value", 1.0)
            total = sum(padded_bound(k) for k in kids) + 3 + len(kids)
            if "value" in e:
                e["value"] = round(total + abs(e["value"]), 3)
                return e["value"]
            return total

        for e in children.get(None, []):
            padded_bound(e)

    return doc(*steps)


def random_mutation_document(rng: random.Random, n_nodes: int = 8,
                             steps: int = 4) -> dict:
    """Evolving tree where all ids persist and parents get shuffled; a rich
    source of moves and ancestor inversions."""
    ids = [f"m{i}" for i in range(n_nodes)]
    parent: dict[str, str | None] = {ids[0]: None}
    for nid in ids[1:]:
        parent[nid] = rng.choice([p for p in ids if p in parent])
    out = []
    for _ in range(steps):
        entries = [{"id": nid, **({"parent": parent[nid]}
                                  if parent[nid] is not None else {})}
                   for nid in ids]
        rng.shuffle(entries)
        out.append(entries)
        # reparent a couple of nodes to random non-descendants
        for _ in range(rng.randint(1, 3)):
            mover = rng.choice(ids)
            descendants = {mover}
            changed = True
            while changed:
                changed = False
                for nid in ids:
                    if parent.get(nid) in descendants and nid not in descendants:
                        descendants.add(nid)
                        changed = True
            options = [nid for nid in ids if nid not in descendants]
            if options:
                parent[mover] = rng.choice(options)
        roots = [nid for nid in ids if parent[nid] is None]
        if not roots:
            parent[ids[0]] = None
    return doc(*out)


# ---------- Independent brute-force classifier ----------

def brute_change_events(forest: TemporalForest, from_t: int):
    """Re-derive the change set for one snapshot pair from parent maps and
    id sets only, without reusing library classification code."""
    A = forest.snapshots[from_t]
    B = forest.snapshots[from_t + 1]

    def real(snap):
        return [n for n in snap.nodes if not n.is_artificial]

    links = [(m, n) for m in real(A) for n in m.next if not n.is_artificial]
    events = []
    for n in real(B):
        if not n.prev:
            events.append(("Add", n.id))
        elif len(n.prev) >= 2:
            events.append(("Merge", tuple(p.id for p in n.prev), n.id))
    for m in real(A):
        if not m.next:
            events.append(("Remove", m.id))
        elif len(m.next) >= 2:
            events.append(("Split", m.id, tuple(s.id for s in m.next)))

    def sibling_index(node):
        # re-derive from raw order keys and input order
        sibs = [c for c in (node.parent.children if node.parent else [node])]
        ordered = sorted(sibs, key=lambda c: (c.order_key, c.seq))
        return ordered.index(node)

    def top(nodep):
        return nodep is None or nodep.is_artificial

    for m, n in links:
        mp, np_ = m.parent, n.parent
        if top(mp) and top(np_):
            same = True
        elif top(mp) or top(np_):
            same = False
        else:
            same = any(s is np_ for s in mp.next)
        if same:
            oi, ni = sibling_index(m), sibling_index(n)
            if oi != ni:
                events.append(("MoveWithin", n.id, oi, ni))
        else:
            events.append(("MoveAcross", n.id,
                           mp.id if not top(mp) else None,
                           np_.id if not top(np_) else None))

    def chain(node):
        out = []
        p = node.parent
        while p is not None:
            out.append(p)
            p = p.parent
        return out

    for n in real(A):
        for m in chain(n):
            if m.is_artificial:
                continue
            hit = False
            for sn in n.next:
                for sm in m.next:
                    if any(a is sn for a in chain(sm)):
                        hit = True
            if hit:
                events.append(("AncestorInversion", n.id, m.id))
    return events


def as_tuples(events):
    out = []
    for ev in events:
        name = type(ev).__name__
        fields = tuple(getattr(ev, f) for f in ev.__dataclass_fields__)
        out.append((name,) + fields)
    return out


def normalize(evts):
    return sorted(evts, key=lambda e: tuple(
        (x if x is not None else "") if not isinstance(x, tuple) else x
        for x in e))


# ---------- SVG scraping ----------

PATH_RE = re.compile(r'<path id="([^"]*)" d="([^"]*)" fill="([^"]*)" '
                     r'stroke="([^"]*)"')
NUM = r"-?\d+\.\d+"
TOKEN_RE = re.compile(
    rf"(M)({NUM}),({NUM})|(H)({NUM})|(L)({NUM}),({NUM})|"
    rf"(C)({NUM}),({NUM}) ({NUM}),({NUM}) ({NUM}),({NUM})|"
    rf"(A)({NUM}),({NUM}) 0 0 1 ({NUM}),({NUM})|(Z)")


def svg_paths(svg_text: str):
    return PATH_RE.findall(svg_text)


def d_tokens(d: str):
    """Tokenize a path string, asserting full coverage of the grammar."""
    out = []
    pos = 0
    for m in TOKEN_RE.finditer(d):
        assert m.start() == pos, f"unparsed path data at {pos}: {d[pos:pos+20]!r}"
        pos = m.end()
        groups = [g for g in m.groups() if g is not None]
        out.append((groups[0], [float(g) for g in groups[1:]]))
    assert pos == len(d), f"trailing path data: {d[pos:]!r}"
    return out


def total_flat_width(svg_text: str) -> float:
    """Flat edges are the only H commands; top and bottom both contribute,
    so half the absolute H travel equals the flat width."""
    width = 0.0
    for _pid, d, _fill, _stroke in svg_paths(svg_text):
        x = 0.0
        for cmd, coords in d_tokens(d):
            if cmd == "M":
                x = coords[0]
            elif cmd == "H":
                width += abs(coords[0] - x)
                x = coords[0]
            elif cmd in ("L",):
                x = coords[0]
            elif cmd == "C":
                x = coords[4]
            elif cmd == "A":
                x = coords[2]
    return width / 2


def cubic_checks(svg_text: str):
    """Yield (start_y, c1_y, c2_y, end_y) for every cubic, tracking the
    current point through the path."""
    for _pid, d, _fill, _stroke in svg_paths(svg_text):
        y = 0.0
        for cmd, coords in d_tokens(d):
            if cmd == "M":
                y = coords[1]
            elif cmd == "L":
                y = coords[1]
            elif cmd == "A":
                y = coords[3]
            elif cmd == "C":
                yield (y, coords[1], coords[3], coords[5])
                y = coords[5]


def tiny_document() -> dict:
    return doc(
        [node("R"), node("a", "R", value=4), node("b", "R", value=2)],
        [node("R"), node("a", "R", value=3), node("c", "R", value=2)],
        [node("R"), node("a", "R", value=3)],
    )


def golden_stages():
    """Reference renders of the tiny document, from juxtaposed one-column
    treemaps through to the fully nested streamgraph.  tests/golden/*.svg
    freezes these bytes; regenerate with tests/regenerate_golden.py."""
    from streamnest.layout import MarginSpec, RenderConfig
    from streamnest.render import StyleConfig

    def cfg(hcr, margin):
        return RenderConfig(hcr=hcr, margin=MarginSpec("fixed", margin),
                            baseline="silhouette", height=200, gap=100)

    return [
        ("treemaps-hcr100-margin4", cfg(1.0, 4), StyleConfig()),
        ("streamgraph-hcr000", cfg(0.0, 0), StyleConfig()),
        ("flats-only-hcr050", cfg(0.5, 0), StyleConfig(show_transitions=False)),
        ("blended-hcr050", cfg(0.5, 0), StyleConfig()),
        ("blended-hcr050-margin4", cfg(0.5, 4), StyleConfig()),
    ]


@pytest.fixture
def tiny_doc():
    return tiny_document()


def approx_le(a: float, b: float, tol: float = 1e-9) -> bool:
    scale = max(1.0, abs(a), abs(b))
    return a <= b + tol * scale


def rel_err(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return abs(a - b) / scale


def assert_close(a: float, b: float, rel: float, what: str = "") -> None:
    assert rel_err(a, b) <= rel, f"{what}: {a} vs {b} (rel {rel_err(a, b)})"


def isclose12(a, b):
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)
