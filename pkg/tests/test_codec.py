import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringtree.codec import (
    ErrorKind,
    NodeLetter,
    Traversal,
    TreeString,
    _scan,
    _well_formed,
    _well_formed_short,
    convert,
    decode_bfs,
    decode_dfs,
    encode_bfs,
    encode_dfs,
    to_codes,
    validate,
    validate_bfs,
    validate_dfs,
)
from stringtree.errors import InvalidString, TraversalMismatch
from stringtree.tree import RootedOrderedTree, from_parentheses, random_ordered_tree

from oracles import (
    CATALAN,
    GOLDEN_BFS,
    GOLDEN_DFS,
    GOLDEN_PARENS,
    GOLDEN_PARENTS,
    all_strings,
    bfs_string_of_shape,
    dfs_string_of_shape,
    ordered_tree_parens,
    parens_of_shape,
    shapes,
)

GOLDEN_TREE = from_parentheses(GOLDEN_PARENS)
STAR = from_parentheses("(()())")


class TestNodeLetter:
    @pytest.mark.parametrize("symbol, flags", [
        ("x", (False, False)),
        ("y", (True, False)),
        ("X", (False, True)),
        ("Y", (True, True)),
    ])
    def test_flags(self, symbol, flags):
        letter = NodeLetter(symbol)
        assert (letter.has_children, letter.is_last_child) == flags
        assert NodeLetter.from_flags(*flags) is letter
        assert NodeLetter.from_code(letter.code) is letter


class TestEncode:
    def test_single(self):
        assert encode_bfs(RootedOrderedTree.single()).text == "Y"
        assert encode_dfs(RootedOrderedTree.single()).text == "Y"

    def test_star(self):
        assert encode_bfs(STAR).text == "YxX"
        assert encode_dfs(STAR).text == "YxX"

    def test_reference_vectors(self):
        bfs = encode_bfs(GOLDEN_TREE)
        assert bfs.text == GOLDEN_BFS and bfs.traversal is Traversal.BFS
        dfs = encode_dfs(GOLDEN_TREE)
        assert dfs.text == GOLDEN_DFS and dfs.traversal is Traversal.DFS

    @given(shapes)
    def test_matches_walk_oracle(self, shape):
        t = from_parentheses(parens_of_shape(shape))
        assert encode_bfs(t).text == bfs_string_of_shape(shape)
        assert encode_dfs(t).text == dfs_string_of_shape(shape)


class TestDecode:
    def test_single(self):
        assert decode_bfs("Y") == RootedOrderedTree.single()
        assert decode_dfs("Y") == RootedOrderedTree.single()

    def test_small_bfs(self):
        assert decode_bfs("YyXYX").parent.tolist() == [-1, 0, 0, 1, 3]

    def test_path(self):
        path = decode_dfs("YYX")
        assert path.parent.tolist() == [-1, 0, 1]
        assert decode_bfs("YYX") == path

    def test_reference_vectors(self):
        assert decode_bfs(GOLDEN_BFS).parent.tolist() == GOLDEN_PARENTS
        assert decode_dfs(GOLDEN_DFS) == GOLDEN_TREE

    def test_invalid_raises_with_report(self):
        with pytest.raises(InvalidString) as info:
            decode_bfs("Yx")
        assert info.value.report.error_kind is ErrorKind.UNTERMINATED_GROUP
        with pytest.raises(InvalidString):
            decode_dfs("Yy")

    def test_traversal_tag_checked(self):
        with pytest.raises(TraversalMismatch):
            decode_bfs(TreeString("YxX", Traversal.DFS))
        with pytest.raises(TraversalMismatch):
            decode_dfs(TreeString("YxX", Traversal.BFS))

    @pytest.mark.parametrize("n", range(1, 10))
    def test_exhaustive_round_trips(self, n):
        for text in ordered_tree_parens(n):
            t = from_parentheses(text)
            for enc, dec in ((encode_bfs, decode_bfs), (encode_dfs, decode_dfs)):
                s = enc(t)
                assert len(s) == n
                assert dec(s) == t
                assert enc(dec(s.text)) == s

    @settings(max_examples=30)
    @given(st.integers(1, 20_000), st.integers(0, 2**32))
    def test_random_round_trips(self, n, seed):
        t = random_ordered_tree(n, seed)
        assert decode_bfs(encode_bfs(t)) == t
        assert decode_dfs(encode_dfs(t)) == t

    def test_large_round_trip(self):
        t = random_ordered_tree(1_000_000, 2024)
        s = encode_bfs(t)
        assert len(s) == 1_000_000
        assert decode_bfs(s) == t


class TestValidate:
    def test_reference_string(self):
        assert validate_bfs(GOLDEN_BFS).valid
        assert validate_dfs(GOLDEN_DFS).valid

    @pytest.mark.parametrize("text, kind, pos", [
        ("Yx", ErrorKind.UNTERMINATED_GROUP, 1),
        ("YXx", ErrorKind.EXTRA_CHARACTERS, 2),
        ("Yy", ErrorKind.UNTERMINATED_GROUP, 1),
        ("YyX", ErrorKind.TRUNCATED_STRING, 3),
        ("", ErrorKind.TRUNCATED_STRING, 0),
        ("X", ErrorKind.BAD_ROOT, 0),
        ("yX", ErrorKind.BAD_ROOT, 0),
        ("Z", ErrorKind.BAD_ALPHABET, 0),
        ("YxQ", ErrorKind.BAD_ALPHABET, 2),
        ("Yé", ErrorKind.BAD_ALPHABET, 1),
    ])
    def test_bfs_errors(self, text, kind, pos):
        report = validate_bfs(text)
        assert not report.valid
        assert (report.error_kind, report.error_position) == (kind, pos)
        assert str(report) == f"{kind.value} at position {pos}"

    @pytest.mark.parametrize("text, kind, pos", [
        ("Yy", ErrorKind.TRUNCATED_STRING, 2),
        ("Yx", ErrorKind.UNTERMINATED_GROUP, 1),
        ("Yyx", ErrorKind.UNTERMINATED_GROUP, 2),
        ("YXx", ErrorKind.EXTRA_CHARACTERS, 2),
        ("YYXX", ErrorKind.EXTRA_CHARACTERS, 3),
    ])
    def test_dfs_errors(self, text, kind, pos):
        report = validate_dfs(text)
        assert (report.valid, report.error_kind, report.error_position) == (False, kind, pos)

    def test_report_truthiness(self):
        assert validate("Y")
        assert not validate("y")
        assert validate("Y").error_kind is ErrorKind.NONE

    @pytest.mark.parametrize("n", range(1, 7))
    def test_census(self, n):
        bfs = [s for s in all_strings(n) if validate_bfs(s).valid]
        dfs = [s for s in all_strings(n) if validate_dfs(s).valid]
        assert len(bfs) == len(dfs) == CATALAN[n - 1]
        # decode/encode carries each valid BFS string to a distinct valid DFS string
        assert sorted(encode_dfs(decode_bfs(s)).text for s in bfs) == sorted(dfs)

    @pytest.mark.parametrize("n", range(1, 10))
    def test_accepts_exactly_image_of_encode(self, n):
        image_bfs = {encode_bfs(from_parentheses(p)).text for p in ordered_tree_parens(n)}
        image_dfs = {encode_dfs(from_parentheses(p)).text for p in ordered_tree_parens(n)}
        assert len(image_bfs) == len(image_dfs) == CATALAN[n - 1]
        if n <= 7:
            assert {s for s in all_strings(n) if validate_bfs(s)} == image_bfs
            assert {s for s in all_strings(n) if validate_dfs(s)} == image_dfs

    @given(st.text(alphabet="xyXY", min_size=0, max_size=300))
    def test_fast_path_agrees_with_scan(self, text):
        text = "Y" + text
        assert _well_formed(to_codes(text)) == _scan(text, Traversal.BFS).valid
        assert _well_formed_short(text) == _well_formed(to_codes(text))
        assert _scan(text, Traversal.BFS).valid == _scan(text, Traversal.DFS).valid

    @settings(max_examples=50)
    @given(st.integers(65, 3000), st.integers(0, 2**32), st.data())
    def test_long_string_errors_located(self, n, seed, data):
        # Corrupting one letter of a long valid string: fast path must defer
        # to the scan, which reports the same thing as on the short path.
        text = list(encode_bfs(random_ordered_tree(n, seed)).text)
        i = data.draw(st.integers(0, n - 1))
        text[i] = data.draw(st.sampled_from([c for c in "xyXYq" if c != text[i]]))
        text = "".join(text)
        assert validate_bfs(text) == _scan(text, Traversal.BFS)
        assert validate_dfs(text) == _scan(text, Traversal.DFS)


class TestInvariants:
    @given(st.integers(1, 500), st.integers(0, 2**32))
    def test_letter_census(self, n, seed):
        t = random_ordered_tree(n, seed)
        for s in (encode_bfs(t).text, encode_dfs(t).text):
            assert len(s) == n
            if n > 1:
                closers = sum(ch in "XY" for ch in s[1:])
                parents = sum(ch in "yY" for ch in s)
                assert closers == parents

    @given(st.integers(1, 300), st.integers(0, 2**32))
    def test_convert(self, n, seed):
        t = random_ordered_tree(n, seed)
        assert convert(encode_bfs(t), Traversal.DFS) == encode_dfs(t)
        assert convert(encode_dfs(t), Traversal.BFS) == encode_bfs(t)

    def test_tree_string_rejects_invalid(self):
        with pytest.raises(InvalidString):
            TreeString("YxxY")
        assert TreeString("Y").node_count == 1
        assert [l.value for l in TreeString("YxX").letters()] == ["Y", "x", "X"]
