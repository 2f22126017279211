"""Graph comparison up to blank-node relabeling.

Generated graphs are ground (or carry deterministic labels), so the cheap
label-for-label check almost always decides. The bounded backtracking
search only runs for parser-produced graphs that disagree on labels; inputs
are expected to stay at or below a few dozen blank nodes.
"""

from __future__ import annotations

from .model import BlankNode, Graph, Triple
from .nt import term_to_ntriples


def _blank_labels(triple: Triple) -> tuple[str, ...]:
    labels = []
    if isinstance(triple.subject, BlankNode):
        labels.append(triple.subject.label)
    if isinstance(triple.object, BlankNode):
        labels.append(triple.object.label)
    return tuple(labels)


def _signature(label: str, triples: frozenset[Triple]) -> tuple:
    """Shape of a blank node's neighborhood with blank positions wildcarded."""
    sig = []
    for t in triples:
        s_hit = isinstance(t.subject, BlankNode) and t.subject.label == label
        o_hit = isinstance(t.object, BlankNode) and t.object.label == label
        if not (s_hit or o_hit):
            continue
        s_key = "*" if isinstance(t.subject, BlankNode) else term_to_ntriples(t.subject)
        o_key = "*" if isinstance(t.object, BlankNode) else term_to_ntriples(t.object)
        sig.append((s_hit, o_hit, t.predicate.value, s_key, o_key))
    return tuple(sorted(sig))


def _substitute(triple: Triple, mapping: dict[str, str]) -> Triple:
    s, o = triple.subject, triple.object
    if isinstance(s, BlankNode):
        s = BlankNode(mapping[s.label])
    if isinstance(o, BlankNode):
        o = BlankNode(mapping[o.label])
    return Triple(s, triple.predicate, o)


def graph_equal(a: Graph, b: Graph) -> bool:
    """True iff the triple sets are equal under some blank-node bijection."""
    if a.triples == b.triples:
        return True
    if len(a) != len(b):
        return False

    a_ground = frozenset(t for t in a if not _blank_labels(t))
    b_ground = frozenset(t for t in b if not _blank_labels(t))
    if a_ground != b_ground:
        return False

    a_rest = a.triples - a_ground
    b_rest = b.triples - b_ground
    a_blanks = sorted({label for t in a_rest for label in _blank_labels(t)})
    b_blanks = sorted({label for t in b_rest for label in _blank_labels(t)})
    if len(a_blanks) != len(b_blanks):
        return False

    b_sigs = {label: _signature(label, b_rest) for label in b_blanks}
    candidates: dict[str, list[str]] = {}
    for label in a_blanks:
        sig = _signature(label, a_rest)
        candidates[label] = [bl for bl in b_blanks if b_sigs[bl] == sig]
        if not candidates[label]:
            return False

    order = sorted(a_blanks, key=lambda label: len(candidates[label]))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent() -> bool:
        for t in a_rest:
            if all(label in mapping for label in _blank_labels(t)):
                if _substitute(t, mapping) not in b_rest:
                    return False
        return True

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        label = order[i]
        for target in candidates[label]:
            if target in used:
                continue
            mapping[label] = target
            used.add(target)
            if consistent() and assign(i + 1):
                return True
            del mapping[label]
            used.discard(target)
        return False

    return assign(0)
