"""Rooted ordered trees as strings over {x, y, X, Y}, two bits per node."""

from .binary import PackedTree, dumps, loads, pack, unpack
from .codec import (
    ErrorKind,
    NodeLetter,
    Traversal,
    TreeString,
    ValidationReport,
    decode,
    decode_bfs,
    decode_dfs,
    encode,
    encode_bfs,
    encode_dfs,
    validate,
    validate_bfs,
    validate_dfs,
)
from .errors import InvalidString, StringTreeError
from .strops import (
    OTTER,
    RewriteMode,
    RewriteRule,
    canonicalize,
    count_canonical,
    edit_distance,
    enumerate_valid,
    extract_subtree,
    find_subtrees,
    graft,
    rewrite,
)
from .tree import (
    NodeOrder,
    RootedOrderedTree,
    bfs_order,
    from_edge_list,
    from_parentheses,
    parse_edge_list,
    preorder,
    random_ordered_tree,
    to_parentheses,
)

__all__ = [
    "ErrorKind",
    "InvalidString",
    "NodeLetter",
    "NodeOrder",
    "OTTER",
    "PackedTree",
    "RewriteMode",
    "RewriteRule",
    "RootedOrderedTree",
    "StringTreeError",
    "Traversal",
    "TreeString",
    "ValidationReport",
    "bfs_order",
    "canonicalize",
    "count_canonical",
    "decode",
    "decode_bfs",
    "decode_dfs",
    "dumps",
    "edit_distance",
    "encode",
    "encode_bfs",
    "encode_dfs",
    "enumerate_valid",
    "extract_subtree",
    "find_subtrees",
    "from_edge_list",
    "from_parentheses",
    "graft",
    "loads",
    "pack",
    "parse_edge_list",
    "preorder",
    "random_ordered_tree",
    "rewrite",
    "to_parentheses",
    "unpack",
    "validate",
    "validate_bfs",
    "validate_dfs",
]

__version__ = "0.1.0"
