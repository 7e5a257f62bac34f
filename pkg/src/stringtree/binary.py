"""Packed 2-bit-per-node file format.

Layout (little-endian)::

    0..3   magic  b"STRT"
    4      version (1)
    5      traversal (0 = BFS, 1 = DFS)
    6..13  node count, uint64
    14..   payload, letter i in bits 2i..2i+1, low bits of each byte first,
           zero-padded to a byte boundary
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .codec import Traversal, TreeString, as_tree_string, codes_to_text
from .errors import (
    BadMagic,
    BadTraversalTag,
    LengthMismatch,
    NonzeroPadding,
    UnsupportedVersion,
)

MAGIC = b"STRT"
VERSION = 1
HEADER = struct.Struct("<4sBBQ")
HEADER_SIZE = HEADER.size  # 14

_TAG_OF_TRAVERSAL = {Traversal.BFS: 0, Traversal.DFS: 1}
_TRAVERSAL_OF_TAG = {v: k for k, v in _TAG_OF_TRAVERSAL.items()}


def payload_size(n: int) -> int:
    return (2 * n + 7) // 8


@dataclass(frozen=True)
class PackedTree:
    node_count: int
    payload: bytes
    traversal_tag: int = 0
    version: int = VERSION
    magic: bytes = MAGIC

    def to_bytes(self) -> bytes:
        return HEADER.pack(self.magic, self.version, self.traversal_tag, self.node_count) + self.payload

    @classmethod
    def from_bytes(cls, data: bytes) -> PackedTree:
        if len(data) < HEADER_SIZE:
            raise LengthMismatch(f"{len(data)} bytes is shorter than the {HEADER_SIZE}-byte header")
        magic, version, tag, n = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise BadMagic(f"bad magic {magic!r}")
        return cls(node_count=n, payload=bytes(data[HEADER_SIZE:]),
                   traversal_tag=tag, version=version, magic=magic)

    def __len__(self):
        return HEADER_SIZE + len(self.payload)


def pack(s) -> PackedTree:
    s = as_tree_string(s)
    codes = s.codes()
    n = codes.size
    padded = np.zeros(4 * payload_size(n), dtype=np.uint8)
    padded[:n] = codes
    quads = padded.reshape(-1, 4)
    payload = quads[:, 0] | (quads[:, 1] << 2) | (quads[:, 2] << 4) | (quads[:, 3] << 6)
    return PackedTree(n, payload.tobytes(), _TAG_OF_TRAVERSAL[s.traversal])


def unpack(p: PackedTree) -> TreeString:
    if p.magic != MAGIC:
        raise BadMagic(f"bad magic {p.magic!r}")
    if p.version != VERSION:
        raise UnsupportedVersion(f"version {p.version} (supported: {VERSION})")
    if p.traversal_tag not in _TRAVERSAL_OF_TAG:
        raise BadTraversalTag(f"traversal tag {p.traversal_tag}")
    n = p.node_count
    if len(p.payload) != payload_size(n):
        raise LengthMismatch(f"payload is {len(p.payload)} bytes, {n} nodes need {payload_size(n)}")
    raw = np.frombuffer(p.payload, dtype=np.uint8)
    codes = np.stack([(raw >> shift) & 3 for shift in (0, 2, 4, 6)], axis=1).reshape(-1)
    if np.any(codes[n:]):
        raise NonzeroPadding("pad bits after the last letter are not zero")
    return TreeString(codes_to_text(codes[:n]), _TRAVERSAL_OF_TAG[p.traversal_tag])


def dumps(s) -> bytes:
    return pack(s).to_bytes()


def loads(data: bytes) -> TreeString:
    return unpack(PackedTree.from_bytes(data))
