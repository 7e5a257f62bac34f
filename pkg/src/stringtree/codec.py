"""String-tree codec.

Each node becomes one letter from ``{x, y, X, Y}``: lowercase for a node that
is not its parent's final child, uppercase for one that is; ``x``/``X`` for
leaves and ``y``/``Y`` for nodes with children. The root is always ``Y``.

Letters are laid out either level by level (BFS) or node-before-children
(DFS, preorder). Internally a letter is a 2-bit code, bit 0 = has children,
bit 1 = last child, so ``x=0, y=1, X=2, Y=3``.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InvalidString, TraversalMismatch
from .tree import RootedOrderedTree, tree_from_bfs_degrees, tree_from_preorder

ALPHABET = "xyXY"
_ALPHABET_BYTES = np.frombuffer(ALPHABET.encode("ascii"), dtype=np.uint8)
_BAD = 255
_CODE_OF_BYTE = np.full(256, _BAD, dtype=np.uint8)
for _code, _byte in enumerate(_ALPHABET_BYTES):
    _CODE_OF_BYTE[_byte] = _code
_CODE_OF_CHAR = {ch: i for i, ch in enumerate(ALPHABET)}


class NodeLetter(enum.Enum):
    x = "x"
    y = "y"
    X = "X"
    Y = "Y"

    @property
    def code(self) -> int:
        return _CODE_OF_CHAR[self.value]

    @property
    def has_children(self) -> bool:
        return bool(self.code & 1)

    @property
    def is_last_child(self) -> bool:
        return bool(self.code & 2)

    @classmethod
    def from_flags(cls, has_children: bool, is_last_child: bool) -> NodeLetter:
        return cls(ALPHABET[int(has_children) | int(is_last_child) << 1])

    @classmethod
    def from_code(cls, code: int) -> NodeLetter:
        return cls(ALPHABET[code])


class Traversal(enum.Enum):
    BFS = "bfs"
    DFS = "dfs"


class ErrorKind(enum.Enum):
    NONE = "none"
    BAD_ALPHABET = "BadAlphabet"
    BAD_ROOT = "BadRoot"
    UNTERMINATED_GROUP = "UnterminatedGroup"
    EXTRA_CHARACTERS = "ExtraCharacters"
    TRUNCATED_STRING = "TruncatedString"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    error_kind: ErrorKind = ErrorKind.NONE
    error_position: int | None = None

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "valid"
        return f"{self.error_kind.value} at position {self.error_position}"


_OK = ValidationReport(True)


def _fail(kind: ErrorKind, position: int) -> ValidationReport:
    return ValidationReport(False, kind, position)


# -- validation -------------------------------------------------------------------------

def to_codes(text: str) -> np.ndarray:
    """Letter codes of ``text``; characters outside the alphabet map to 255."""
    try:
        raw = text.encode("ascii")
    except UnicodeEncodeError:
        raw = text.encode("ascii", errors="replace")
    return _CODE_OF_BYTE[np.frombuffer(raw, dtype=np.uint8)]


def codes_to_text(codes: np.ndarray) -> str:
    return _ALPHABET_BYTES[codes].tobytes().decode("ascii")


def _well_formed(codes: np.ndarray) -> bool:
    # Count of parents still owed children, taken before each letter after the
    # root. It must stay positive until the end and reach zero exactly there.
    # The condition is the same for both traversals; only the owner differs.
    n = codes.size
    if n == 0 or codes[0] != 3 or np.any(codes == _BAD):
        return False
    if n == 1:
        return True
    body = codes[1:].astype(np.int64)
    owed = 1 + np.cumsum((body & 1) - (body >> 1))
    return bool(owed[-1] == 0 and (n == 2 or owed[:-1].min() > 0))


def _scan(text: str, traversal: Traversal) -> ValidationReport:
    """Letter-by-letter check that pinpoints the first error.

    BFS hands sibling groups to waiting parents first-in first-out, DFS
    last-in first-out; ``waiting`` is the queue or stack accordingly.
    """
    if not text:
        return _fail(ErrorKind.TRUNCATED_STRING, 0)
    if text[0] != "Y":
        kind = ErrorKind.BAD_ROOT if text[0] in _CODE_OF_CHAR else ErrorKind.BAD_ALPHABET
        return _fail(kind, 0)
    if len(text) == 1:
        return _OK

    waiting = deque([0])
    take = waiting.popleft if traversal is Traversal.BFS else waiting.pop
    group_start = None  # position of the first letter of the open sibling group
    for pos in range(1, len(text)):
        code = _CODE_OF_CHAR.get(text[pos])
        if code is None:
            return _fail(ErrorKind.BAD_ALPHABET, pos)
        if not waiting:
            return _fail(ErrorKind.EXTRA_CHARACTERS, pos)
        if group_start is None:
            group_start = pos
        if traversal is Traversal.DFS:
            # Children of this letter come right after it, so settle its
            # parent's group before pushing it.
            if code & 2:
                take()
                group_start = None
            if code & 1:
                waiting.append(pos)
        else:
            if code & 1:
                waiting.append(pos)
            if code & 2:
                take()
                group_start = None
    if waiting:
        if traversal is Traversal.DFS:
            # The innermost waiting parent got a child iff a letter follows it.
            owner = waiting[-1]
            group_start = owner + 1 if owner + 1 < len(text) else None
        if group_start is not None:
            return _fail(ErrorKind.UNTERMINATED_GROUP, group_start)
        return _fail(ErrorKind.TRUNCATED_STRING, len(text))
    return _OK


_OWED_STEP = {"x": 0, "y": 1, "X": -1, "Y": 0}


def _well_formed_short(text: str) -> bool:
    # Same count as _well_formed, without numpy overhead on short strings.
    if text[:1] != "Y":
        return False
    owed = 1
    step = _OWED_STEP
    for ch in text[1:]:
        if owed <= 0:
            return False
        d = step.get(ch)
        if d is None:
            return False
        owed += d
    return owed == 0 or len(text) == 1


def validate(text: str, traversal: Traversal = Traversal.BFS) -> ValidationReport:
    if isinstance(text, TreeString):
        text = text.text
    if len(text) > 64:
        if _well_formed(to_codes(text)):
            return _OK
    elif _well_formed_short(text):
        return _OK
    return _scan(text, traversal)


def validate_bfs(text: str) -> ValidationReport:
    return validate(text, Traversal.BFS)


def validate_dfs(text: str) -> ValidationReport:
    return validate(text, Traversal.DFS)


# -- tree strings -----------------------------------------------------------------------

@dataclass(frozen=True)
class TreeString:
    """Validated letter string tagged with its traversal order."""

    text: str
    traversal: Traversal = Traversal.BFS

    def __post_init__(self):
        report = validate(self.text, self.traversal)
        if not report.valid:
            raise InvalidString(report)

    @classmethod
    def _unchecked(cls, text: str, traversal: Traversal) -> TreeString:
        # For text produced by an encoder, valid by construction.
        s = object.__new__(cls)
        object.__setattr__(s, "text", text)
        object.__setattr__(s, "traversal", traversal)
        return s

    def __str__(self):
        return self.text

    def __len__(self):
        return len(self.text)

    @property
    def node_count(self) -> int:
        return len(self.text)

    def letters(self) -> list[NodeLetter]:
        return [NodeLetter(ch) for ch in self.text]

    def codes(self) -> np.ndarray:
        return to_codes(self.text)


def as_tree_string(s, traversal: Traversal | None = None) -> TreeString:
    """Coerce raw text (validated under ``traversal``, default BFS) to a TreeString."""
    if isinstance(s, TreeString):
        if traversal is not None and s.traversal is not traversal:
            raise TraversalMismatch(f"expected a {traversal.value} string, got {s.traversal.value}")
        return s
    return TreeString(s, traversal or Traversal.BFS)


# -- BFS ------------------------------------------------------------------------------

def _node_codes(tree: RootedOrderedTree) -> np.ndarray:
    codes = (tree.degree > 0).astype(np.uint8) | (tree.is_last_child().astype(np.uint8) << 1)
    codes[0] = 3
    return codes


def encode_bfs(tree: RootedOrderedTree) -> TreeString:
    return TreeString._unchecked(codes_to_text(_node_codes(tree)), Traversal.BFS)


def decode_bfs(s) -> RootedOrderedTree:
    """Rebuild a tree from a BFS string.

    Sibling groups are handed out to the nodes with children in the order
    those nodes appear, so the k-th group belongs to the k-th ``y``/``Y``.
    """
    s = as_tree_string(s, Traversal.BFS)
    codes = s.codes()
    n = codes.size
    if n == 1:
        return RootedOrderedTree.single()
    internal = np.flatnonzero(codes & 1)
    closes = (codes[1:] >> 1).astype(np.int64)
    group = np.cumsum(closes) - closes
    parent = np.empty(n, dtype=np.int64)
    parent[0] = -1
    parent[1:] = internal[group]
    return RootedOrderedTree._unchecked(parent)


# -- DFS ------------------------------------------------------------------------------

def encode_dfs(tree: RootedOrderedTree) -> TreeString:
    parent = tree.parent.tolist()
    n = len(parent)
    degree = [0] * n
    for p in parent[1:]:
        degree[p] += 1
    # Siblings are contiguous in BFS numbering: node v's children start at first[v].
    first = [1] * n
    for v in range(1, n):
        first[v] = first[v - 1] + degree[v - 1]
    out = []
    stack = [0]
    while stack:
        v = stack.pop()
        if v == 0:
            out.append("Y")
        else:
            last = v == n - 1 or parent[v] != parent[v + 1]
            out.append(ALPHABET[(degree[v] > 0) | (last << 1)])
        f = first[v]
        stack.extend(range(f + degree[v] - 1, f - 1, -1))
    return TreeString._unchecked("".join(out), Traversal.DFS)


def decode_dfs(s) -> RootedOrderedTree:
    s = as_tree_string(s, Traversal.DFS)
    text = s.text
    n = len(text)
    if n == 1:
        return RootedOrderedTree.single()
    depths = [0] * n
    degrees = [0] * n
    stack = [0]
    code_of = _CODE_OF_CHAR
    for pos in range(1, n):
        code = code_of[text[pos]]
        p = stack[-1]
        degrees[p] += 1
        depths[pos] = depths[p] + 1
        if code & 2:
            stack.pop()
        if code & 1:
            stack.append(pos)
    return tree_from_preorder(depths, degrees)


def encode(tree: RootedOrderedTree, traversal: Traversal = Traversal.BFS) -> TreeString:
    return encode_bfs(tree) if traversal is Traversal.BFS else encode_dfs(tree)


def decode(s, traversal: Traversal | None = None) -> RootedOrderedTree:
    s = as_tree_string(s, traversal)
    return decode_bfs(s) if s.traversal is Traversal.BFS else decode_dfs(s)


def convert(s: TreeString, traversal: Traversal) -> TreeString:
    """Re-encode ``s`` under another traversal."""
    if s.traversal is traversal:
        return s
    return encode(decode(s), traversal)


def from_bfs_degrees(degrees) -> TreeString:
    return encode_bfs(tree_from_bfs_degrees(degrees))
