"""Tree manipulation carried out on the encoded strings.

Levenshtein distance, regex rewriting, subtree search and grafting work on
the letter strings directly. Search, extraction and grafting need DFS
strings, where every subtree is a contiguous substring.

Also here: canonical forms for unordered (unlabelled) rooted trees, and the
enumeration routines used to check the counting claims.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

import numpy as np

from .codec import (
    ALPHABET,
    ErrorKind,
    NodeLetter,
    Traversal,
    TreeString,
    ValidationReport,
    as_tree_string,
    decode,
    encode_dfs,
    validate,
)
from .errors import IndexOutOfRange, InvalidResult, NotALeaf, TooLarge, TraversalMismatch
from .tree import from_parentheses

_CODE = {ch: i for i, ch in enumerate(ALPHABET)}


@dataclass(frozen=True)
class OtterConstants:
    """Reference constants for ``amplitude * growth**n * n**exponent`` tree counts.

    With these defaults the estimate undershoots exact rooted-tree counts
    by an order of magnitude at desk-scale n; rooted trees grow like
    ``n**-1.5`` with growth near 2.9558. Only ``growth`` is used as a bound.
    """

    amplitude: float = 0.4399
    growth: float = 2.996
    exponent: float = -2.5

    def estimate(self, n: int) -> float:
        return self.amplitude * self.growth ** n * n ** self.exponent

    @property
    def bits_per_node(self) -> float:
        return math.log2(self.growth)


OTTER = OtterConstants()


def _common_traversal(a, b) -> Traversal:
    ta = a.traversal if isinstance(a, TreeString) else None
    tb = b.traversal if isinstance(b, TreeString) else None
    if ta and tb and ta is not tb:
        raise TraversalMismatch(f"cannot compare a {ta.value} string with a {tb.value} string")
    return ta or tb or Traversal.BFS


# -- edit distance ---------------------------------------------------------------------

def edit_distance(a, b) -> int:
    """Unit-cost Levenshtein distance between two tree strings of the same traversal."""
    traversal = _common_traversal(a, b)
    a = as_tree_string(a, traversal).codes().astype(np.int64)
    b = as_tree_string(b, traversal).codes().astype(np.int64)
    if a.size < b.size:
        a, b = b, a
    offsets = np.arange(b.size + 1)
    row = offsets.copy()
    for i, letter in enumerate(a, 1):
        # Deletion and substitution come from the previous row; the insertion
        # chain along the row is a running minimum of (cost - column).
        best = np.empty_like(row)
        best[0] = i
        best[1:] = np.minimum(row[1:] + 1, row[:-1] + (b != letter))
        row = np.minimum.accumulate(best - offsets) + offsets
    return int(row[-1])


# -- regex rewriting ---------------------------------------------------------------------

class RewriteMode(enum.Enum):
    FIRST = "first"
    GLOBAL = "global"


_PATTERN_NAMES = re.compile(r"\\.|\(\?P<\w+>|\(\?P=\w+\)")
_REPLACEMENT_TOKEN = re.compile(r"\\g<(\w+)>|\\(\d{1,2})|[xyXY]")


@dataclass(frozen=True)
class RewriteRule:
    """Regex over the letter alphabet plus a replacement made of letters and group references."""

    pattern: str
    replacement: str

    def __post_init__(self):
        stray = set(re.findall(r"[A-Za-z]", _PATTERN_NAMES.sub("", self.pattern))) - set(ALPHABET)
        if stray:
            raise ValueError(f"pattern uses letters outside the alphabet: {''.join(sorted(stray))}")
        try:
            compiled = re.compile(self.pattern)
        except re.error as exc:
            raise ValueError(f"bad pattern {self.pattern!r}: {exc}") from None
        pos = 0
        for m in _REPLACEMENT_TOKEN.finditer(self.replacement):
            if m.start() != pos:
                break
            pos = m.end()
            name, number = m.groups()
            ref = number or name
            if ref is None:
                continue
            if ref.isdigit():
                if not 0 <= int(ref) <= compiled.groups:
                    raise ValueError(f"replacement refers to missing group {ref}")
            elif ref not in compiled.groupindex:
                raise ValueError(f"replacement refers to missing group {ref!r}")
        if pos != len(self.replacement):
            raise ValueError(f"bad replacement {self.replacement!r} at offset {pos}")
        object.__setattr__(self, "_compiled", compiled)

    @property
    def compiled(self) -> re.Pattern:
        return self._compiled

    @classmethod
    def parse(cls, text: str) -> tuple[RewriteRule, RewriteMode]:
        """Parse sed-style ``s/PATTERN/REPLACEMENT/[g]``; ``\\/`` escapes a slash."""
        parts = re.split(r"(?<!\\)/", text)
        if len(parts) != 4 or parts[0] != "s" or parts[3] not in ("", "g"):
            raise ValueError(f"expected s/PATTERN/REPLACEMENT/[g], got {text!r}")
        pattern, replacement = (p.replace("\\/", "/") for p in parts[1:3])
        mode = RewriteMode.GLOBAL if parts[3] == "g" else RewriteMode.FIRST
        return cls(pattern, replacement), mode


def rewrite(s, rule: RewriteRule, mode: RewriteMode | str = RewriteMode.GLOBAL) -> TreeString:
    """Regex substitution on the letters, kept only if the result is a valid tree.

    Matching is leftmost and non-overlapping. When every match leaves the
    root letter alone, a multi-node tree may not shrink to the bare ``"Y"``:
    the untouched root still claims children.
    """
    s = as_tree_string(s)
    mode = RewriteMode(mode)
    count = 1 if mode is RewriteMode.FIRST else 0
    pieces = []
    pos = 0
    root_rewritten = False
    for i, m in enumerate(rule.compiled.finditer(s.text)):
        if count and i >= count:
            break
        root_rewritten |= m.start() == 0
        pieces.append(s.text[pos:m.start()])
        pieces.append(m.expand(rule.replacement))
        pos = m.end()
    pieces.append(s.text[pos:])
    text = "".join(pieces)

    if text == "Y" and len(s) > 1 and not root_rewritten:
        raise InvalidResult(ValidationReport(False, ErrorKind.TRUNCATED_STRING, 1))
    return _checked(text, s.traversal)


def _checked(text: str, traversal: Traversal) -> TreeString:
    report = validate(text, traversal)
    if not report.valid:
        raise InvalidResult(report)
    return TreeString(text, traversal)


# -- DFS subtree operations ------------------------------------------------------------------

def subtree_sizes(s) -> np.ndarray:
    """Size of the subtree rooted at each position of a DFS string."""
    text = as_tree_string(s, Traversal.DFS).text
    n = len(text)
    parent = [0] * n
    stack = [0]
    for pos in range(1, n):
        code = _CODE[text[pos]]
        parent[pos] = stack[-1]
        if code & 2:
            stack.pop()
        if code & 1:
            stack.append(pos)
    size = [1] * n
    for pos in range(n - 1, 0, -1):
        size[parent[pos]] += size[pos]
    return np.array(size, dtype=np.int64)


def _subtree_end(text: str, position: int) -> int:
    """Index one past the last letter of the subtree rooted at ``position``."""
    if position == 0:
        return len(text)
    open_groups = _CODE[text[position]] & 1
    j = position + 1
    while open_groups:
        code = _CODE[text[j]]
        open_groups += (code & 1) - (code >> 1)
        j += 1
    return j


def find_subtrees(haystack, needle) -> list[int]:
    """Positions in ``haystack`` whose subtree has the same shape as ``needle``.

    The needle's root letter is compared only by its has-children flag,
    since its last-child flag depends on where it sits. A 1-node needle
    matches every position.
    """
    haystack = as_tree_string(haystack, Traversal.DFS)
    needle = as_tree_string(needle, Traversal.DFS)
    m = len(needle)
    if m == 1:
        return list(range(len(haystack)))
    text, body = haystack.text, needle.text[1:]
    sizes = subtree_sizes(haystack)
    hits = []
    j = text.find(body, 1)
    while j != -1:
        if sizes[j - 1] == m:
            hits.append(j - 1)
        j = text.find(body, j + 1)
    return hits


def extract_subtree(s, position: int) -> TreeString:
    """Subtree rooted at ``position`` as a standalone DFS string (root letter ``Y``)."""
    s = as_tree_string(s, Traversal.DFS)
    if not 0 <= position < len(s):
        raise IndexOutOfRange(position, len(s))
    end = _subtree_end(s.text, position)
    return TreeString("Y" + s.text[position + 1:end], Traversal.DFS)


def graft(host, position: int, scion) -> TreeString:
    """Replace the leaf at ``position`` of ``host`` with the tree ``scion``."""
    host = as_tree_string(host, Traversal.DFS)
    scion = as_tree_string(scion, Traversal.DFS)
    if not 0 <= position < len(host):
        raise IndexOutOfRange(position, len(host))
    if len(host) == 1:
        return scion
    leaf = NodeLetter(host.text[position])
    if position == 0 or leaf.has_children:
        raise NotALeaf(position)
    root = NodeLetter.from_flags(len(scion) > 1, leaf.is_last_child).value
    text = host.text[:position] + root + scion.text[1:] + host.text[position + 1:]
    return _checked(text, Traversal.DFS)


# -- canonical forms -----------------------------------------------------------------

def shape_code(s) -> str:
    """Canonical parenthesis code: children sorted by their own codes, ``(`` < ``)``."""
    tree = decode(as_tree_string(s))
    codes: dict[int, str] = {}
    for v in range(tree.node_count - 1, -1, -1):
        # BFS labels: children always carry larger indices than their parent.
        kids = sorted(codes.pop(c) for c in tree.children(v))
        codes[v] = "(" + "".join(kids) + ")"
    return codes[0]


def canonicalize(s) -> TreeString:
    """DFS string of the representative of ``s``'s unordered isomorphism class."""
    return encode_dfs(from_parentheses(shape_code(s)))


def unlabelled_shapes(n: int, max_n: int = 16) -> list[str]:
    """Canonical codes of all unordered rooted trees with ``n`` nodes, sorted.

    Builds each size from multisets of smaller canonical subtrees instead of
    canonicalizing every ordered tree.
    """
    if n < 1:
        raise ValueError(f"tree size must be positive, got {n}")
    if n > max_n:
        raise TooLarge(f"n={n} exceeds the enumeration guard {max_n}")
    by_size: list[list[str]] = [[], ["()"]]
    for k in range(2, n + 1):
        pool = [(code, size) for size in range(1, k) for code in by_size[size]]
        shapes = []
        chosen: list[str] = []

        def forests(budget, start):
            if budget == 0:
                shapes.append("(" + "".join(sorted(chosen)) + ")")
                return
            for idx in range(start, len(pool)):
                code, size = pool[idx]
                if size > budget:
                    break
                chosen.append(code)
                forests(budget - size, idx)
                chosen.pop()

        forests(k - 1, 0)
        by_size.append(sorted(shapes))
    return by_size[n]


def count_canonical(n: int, max_n: int = 16) -> int:
    """Number of unlabelled rooted trees with ``n`` nodes."""
    return len(unlabelled_shapes(n, max_n))


# -- enumeration ----------------------------------------------------------------------

def enumerate_valid(n: int, traversal: Traversal | str = Traversal.BFS, max_n: int = 20) -> list[TreeString]:
    """All valid strings of length ``n``, lexicographic under ``x < y < X < Y``."""
    traversal = Traversal(traversal)
    if n < 1:
        raise ValueError(f"string length must be positive, got {n}")
    if n > max_n:
        raise TooLarge(f"n={n} exceeds the enumeration guard {max_n}")
    if n == 1:
        return [TreeString("Y", traversal)]
    out = []

    def extend(prefix, owed, remaining):
        # owed: parents still expecting children; both traversals share this count.
        if remaining == 0:
            out.append(TreeString(prefix, traversal))
            return
        for code, ch in enumerate(ALPHABET):
            o = owed + (code & 1) - (code >> 1)
            r = remaining - 1
            if (r == 0 and o == 0) or 1 <= o <= r:
                extend(prefix + ch, o, r)

    extend("Y", 1, n - 1)
    return out
