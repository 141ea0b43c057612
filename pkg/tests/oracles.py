"""Brute-force reference implementations used to check the relex search code."""
from itertools import combinations

from udbart.conllu import ROOT


def simple_paths(g, a, b):
    """Every simple undirected path from a to b as (steps, nodes); steps are (label, direction)."""
    adj = {}
    for e in g.edges():
        if e.head == ROOT:
            continue
        adj.setdefault(e.head, []).append((e.label, "down", e.dependent))
        adj.setdefault(e.dependent, []).append((e.label, "up", e.head))
    out = []

    def walk(node, seen, steps, nodes):
        if node == b:
            out.append((tuple(steps), tuple(nodes)))
            return
        for lab, d, other in adj.get(node, ()):
            if other not in seen:
                walk(other, seen | {other}, steps + [(lab, d)], nodes + [other])

    walk(a, {a}, [], [])
    return out


def best_path(g, a, b):
    paths = simple_paths(g, a, b)
    if not paths:
        return None
    return min(paths, key=lambda p: (len(p[0]), p[0], p[1]))


def walk_matches(pattern, g, a, b):
    """Enumerate every edge sequence of the pattern's length starting at a."""
    edges = [e for e in g.edges() if e.head != ROOT]

    def words(n):
        t = g.tokens[n]
        return {(t.form or "").lower(), (t.lemma or t.form or "").lower()}

    def go(node, i):
        if i == len(pattern.steps):
            return node == b
        step = pattern.steps[i]
        for e in edges:
            if e.label != step.label:
                continue
            if step.direction == "down" and e.head == node:
                nxt = e.dependent
            elif step.direction == "up" and e.dependent == node:
                nxt = e.head
            else:
                continue
            if i < len(pattern.steps) - 1 and step.anchor and step.anchor.lower() not in words(nxt):
                continue
            if go(nxt, i + 1):
                return True
        return False

    return go(a, 0)


def best_subset_f1(rel, patterns, gold, hits, f1):
    best = 0.0
    for r in range(len(patterns) + 1):
        for sub in combinations(patterns, r):
            best = max(best, f1(rel, sub, gold, hits))
    return best
