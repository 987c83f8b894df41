"""Bitmask helpers for subsets of a fixed finite carrier.

A subset of `points[0..n-1]` is an int whose bit i is set when points[i]
is a member.  The canonical order used everywhere puts smaller subsets
first and breaks ties lexicographically on the member index tuple, so
derived listings are reproducible run to run.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


def mask_of(points: Sequence[str], members: Iterable[str]) -> int:
    idx = {p: i for i, p in enumerate(points)}
    m = 0
    for p in members:
        m |= 1 << idx[p]
    return m


def members(points: Sequence[str], mask: int) -> tuple[str, ...]:
    return tuple(p for i, p in enumerate(points) if mask >> i & 1)


def name_of(points: Sequence[str], mask: int) -> str:
    'Canonical display name, e.g. "{a,c}" or "{}".'
    return "{" + ",".join(members(points, mask)) + "}"


def parse_name(points: Sequence[str], text: str) -> int:
    'Inverse of name_of; also accepts a bare comma-separated list.'
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return 0
    idx = {p: i for i, p in enumerate(points)}
    m = 0
    for part in body.split(","):
        p = part.strip()
        if p not in idx:
            raise KeyError(p)
        m |= 1 << idx[p]
    return m


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    bits = tuple(i for i in range(mask.bit_length()) if mask >> i & 1)
    return (len(bits), bits)


def canonical_sort(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=canonical_key))


def subsets_of(mask: int) -> list[int]:
    'All submasks of `mask`, canonically sorted.'
    out = [0]
    for i in range(mask.bit_length()):
        if mask >> i & 1:
            out += [s | (1 << i) for s in out]
    return list(canonical_sort(out))


def popcount(mask: int) -> int:
    return bin(mask).count("1")
