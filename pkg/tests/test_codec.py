import random

import pytest
from hypothesis import given, settings, strategies as st

from arctext import (
    ConvSpec,
    CycleDetectedError,
    DanglingConnectError,
    DuplicateIdError,
    EmptyInputError,
    FullSpec,
    InvalidSpecError,
    MalformedLineError,
    MFSpec,
    MultipleSinksError,
    NonCanonicalSinkError,
    NonContiguousIdsError,
    PoolSpec,
    SelfLoopError,
    UnclassifiableLineError,
    build_graph,
    classify_line,
    description_from_text,
    kind_of,
    parse_description,
    parse_line,
    render_description,
    render_unit,
)

import gen

MF_A = "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:2"
MF_SINK = "id:2;name:B;in_size:4;out_size:4;value:Null;connect_to:Null"


class TestRenderUnit:
    def test_conv_line(self):
        spec = ConvSpec((32, 32, 3), (32, 32, 3), (1, 1), (1, 1))
        assert render_unit(spec, 1, [2]).text == (
            "id:1;in_size:32-32-3;out_size:32-32-3;kernel:1-1;stride:1-1;"
            "padding:0-0-0-0-0-0-0-0;dilation:1;groups:1;bias_used:No;connect_to:2"
        )

    def test_pool_line_with_two_targets(self):
        spec = PoolSpec("Max", (112, 112, 64), (56, 56, 64), (3, 3), (2, 2), (1, 1, 1, 1))
        assert render_unit(spec, 4, [5, 10]).text == (
            "id:4;type:Max;in_size:112-112-64;out_size:56-56-64;kernel:3-3;"
            "stride:2-2;padding:1-1-1-1;dilation:1;bias_used:No;connect_to:5-10"
        )

    def test_full_line(self):
        assert render_unit(FullSpec(2560, 512, "ReLU"), 11, [25]).text == (
            "id:11;in_size:2560;out_size:512;act_fun:ReLU;connect_to:25"
        )

    def test_full_line_without_activation(self):
        assert render_unit(FullSpec(2560, 512), 11, [25]).text == (
            "id:11;in_size:2560;out_size:512;connect_to:25"
        )

    def test_mf_sink_line(self):
        spec = MFSpec("Dropout", (512,), (512,), ("0.5",))
        assert render_unit(spec, 25, None).text == (
            "id:25;name:Dropout;in_size:512;out_size:512;value:0.5;connect_to:Null"
        )

    def test_mf_multi_value_sorted(self):
        spec = MFSpec("Scale", (8,), (8,), ("b", "0.5", "a"))
        line = render_unit(spec, 1, None).text
        assert "value:0.5-a-b" in line

    def test_rejects_bad_id_and_targets(self):
        spec = FullSpec(4, 4)
        with pytest.raises(InvalidSpecError):
            render_unit(spec, 0, None)
        with pytest.raises(InvalidSpecError):
            render_unit(spec, True, None)
        with pytest.raises(InvalidSpecError):
            render_unit(spec, 1, [5, 3])
        with pytest.raises(InvalidSpecError):
            render_unit(spec, 1, [2, 2])
        with pytest.raises(InvalidSpecError):
            render_unit(spec, 1, [0])


class TestClassifyLine:
    def test_pool(self):
        assert classify_line("id:21;type:Max;in_size:1-1-1;connect_to:Null") == "pool"

    def test_full(self):
        assert classify_line("id:13;in_size:64;out_size:1000;act_fun:ReLU;connect_to:Null") == "full"

    def test_mf(self):
        assert classify_line(MF_A) == "mf"

    def test_conv(self):
        assert classify_line("id:1;kernel:3-3;connect_to:2") == "conv"

    def test_name_beats_kernel(self):
        # an mf whose value happens to be spelled like a kernel stays mf
        assert classify_line("id:1;name:X;kernel:3-3") == "mf"

    @pytest.mark.parametrize("junk", [
        "id:3;bogus:1",
        "garbage",
        "id:1;in_size:4;out_size:4;weird:1;connect_to:Null",
        "",
    ])
    def test_unclassifiable(self, junk):
        with pytest.raises(UnclassifiableLineError):
            classify_line(junk)


class TestParseLine:
    def test_round_trips_paper_style_conv(self):
        text = (
            "id:1;in_size:224-224-3;out_size:112-112-64;kernel:7-7;stride:2-2;"
            "padding:0-3-0-3-0-3-0-3;dilation:1;groups:1;bias_used:No;connect_to:2"
        )
        uid, spec, connect = parse_line(text)
        assert (uid, connect) == (1, (2,))
        assert spec.padding == ((0, 3), (0, 3), (0, 3), (0, 3))
        assert render_unit(spec, uid, connect).text == text

    @pytest.mark.parametrize("line", [
        "id:1;type:Med;in_size:4-4-2;out_size:4-4-2;kernel:2-2;stride:1-1;padding:0-0-0-0;dilation:1;bias_used:No;connect_to:Null",
        "id:01;name:A;in_size:4;out_size:4;value:Null;connect_to:2",
        "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:0",
        "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:3-2",
        "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:2-2",
        "id:1;name:A;in_size:4;out_size:4;value:b-a;connect_to:2",
        "id:1;name:A;out_size:4;in_size:4;value:Null;connect_to:2",
        "id:1;name:A;in_size:4;value:Null;connect_to:2",
        "id:1;name:A;in_size:4;out_size:4;value:Null;extra:1;connect_to:2",
        "id:1;name:A;in_size:4-4;out_size:4-4;value:Null;connect_to:2",
        "id:1;in_size:64;out_size:1000;act_fun:ReLU;connect_to:",
        "id:1;in_size:64;out_size:1000;bias_used:yes;kernel:1-1;stride:1-1;padding:0-0-0-0-0-0-0-0;dilation:1;groups:1;connect_to:2",
        "id:1;in_size:0;out_size:4;act_fun:ReLU;connect_to:2",
    ])
    def test_malformed(self, line):
        with pytest.raises((MalformedLineError, UnclassifiableLineError)):
            parse_line(line)

    def test_field_order_is_strict(self):
        swapped = (
            "id:1;out_size:112-112-64;in_size:224-224-3;kernel:7-7;stride:2-2;"
            "padding:0-3-0-3-0-3-0-3;dilation:1;groups:1;bias_used:No;connect_to:2"
        )
        with pytest.raises(MalformedLineError):
            parse_line(swapped)


class TestParseDescription:
    def test_fixture_round_trip(self, resnet4_text, branching25_text):
        for text in (resnet4_text, branching25_text):
            graph, order = parse_description(text)
            assert render_description(graph).text == text
            assert order.by_position == tuple(f"n{i}" for i in range(1, order.n + 1))

    def test_tolerates_one_trailing_newline(self, resnet4_text):
        graph, _ = parse_description(resnet4_text + "\n")
        assert render_description(graph).text == resnet4_text
        with pytest.raises(MalformedLineError):
            parse_description(resnet4_text + "\n\n")

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            parse_description("")
        with pytest.raises(EmptyInputError):
            parse_description("\n")

    def test_duplicate_id(self):
        text = MF_A + "\n" + MF_A
        with pytest.raises(DuplicateIdError):
            parse_description(text)

    def test_noncontiguous_ids(self):
        lines = [
            MF_A,
            "id:2;name:B;in_size:4;out_size:4;value:Null;connect_to:4",
            "id:4;name:C;in_size:4;out_size:4;value:Null;connect_to:Null",
        ]
        with pytest.raises(NonContiguousIdsError):
            parse_description("\n".join(lines))

    def test_out_of_order_ids(self):
        text = MF_SINK + "\n" + MF_A
        with pytest.raises(NonContiguousIdsError):
            parse_description(text)

    def test_dangling_connect(self):
        text = (
            "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:3\n"
            "id:2;name:B;in_size:4;out_size:4;value:Null;connect_to:Null"
        )
        with pytest.raises(DanglingConnectError):
            parse_description(text)

    def test_multiple_sinks(self):
        text = (
            "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:Null\n"
            "id:2;name:B;in_size:4;out_size:4;value:Null;connect_to:Null"
        )
        with pytest.raises(MultipleSinksError):
            parse_description(text)

    def test_sink_must_be_last_id(self):
        text = (
            "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:Null\n"
            "id:2;name:B;in_size:4;out_size:4;value:Null;connect_to:1"
        )
        with pytest.raises(NonCanonicalSinkError):
            parse_description(text)

    def test_no_sink_is_a_cycle(self):
        text = (
            "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:2\n"
            "id:2;name:B;in_size:4;out_size:4;value:Null;connect_to:1"
        )
        with pytest.raises(CycleDetectedError):
            parse_description(text)

    def test_self_reference(self):
        text = (
            "id:1;name:A;in_size:4;out_size:4;value:Null;connect_to:1-2\n"
            "id:2;name:B;in_size:4;out_size:4;value:Null;connect_to:Null"
        )
        with pytest.raises(SelfLoopError):
            parse_description(text)

    def test_blank_line(self):
        with pytest.raises(MalformedLineError):
            parse_description(MF_A + "\n\n" + MF_SINK)

    def test_synthesized_names(self):
        graph, order = parse_description(MF_A + "\n" + MF_SINK)
        assert set(graph.names()) == {"n1", "n2"}
        assert order.position_of("n1") == 1


class TestRenderDescription:
    def test_two_node_chain(self):
        g = build_graph(
            [("x", ConvSpec((4, 4, 1), (4, 4, 1), (1, 1), (1, 1))),
             ("y", MFSpec("ReLU", (4, 4, 1), (4, 4, 1)))],
            [("x", "y")],
        )
        d = render_description(g)
        assert len(d.lines) == 2
        assert d.lines[0].text.startswith("id:1;") and d.text.endswith("connect_to:Null")
        assert "\n" == d.text[len(d.lines[0].text):len(d.lines[0].text) + 1]

    def test_no_trailing_newline(self, resnet4):
        assert not render_description(resnet4).text.endswith("\n")

    def test_connect_closure(self):
        rng = random.Random(3)
        for _ in range(20):
            d = render_description(gen.random_graph(rng, min_nodes=5, max_nodes=20))
            n = len(d.lines)
            nulls = [line for line in d.lines if line.connect_to is None]
            assert [line.id for line in nulls] == [n]
            for line in d.lines:
                for target in line.connect_to or ():
                    assert 1 <= target <= n and target != line.id

    def test_random_round_trip(self):
        rng = random.Random(5)
        for _ in range(50):
            g = gen.random_graph(rng)
            text = render_description(g).text
            graph, _ = parse_description(text)
            assert render_description(graph).text == text

    def test_distinct_graphs_distinct_texts(self):
        rng = random.Random(8)
        texts = [render_description(gen.random_graph(rng)).text for _ in range(50)]
        assert len(set(texts)) == len(texts)

    def test_description_from_text_identity(self, branching25_text):
        assert description_from_text(branching25_text).text == branching25_text


# --- grammar totality over randomized specs -----------------------------------

_sizes = st.integers(1, 512)
_token = st.text(
    alphabet=st.characters(whitelist_categories=("Lu", "Ll", "Nd")),
    min_size=1, max_size=8,
)

_conv_specs = st.builds(
    ConvSpec,
    in_size=st.tuples(_sizes, _sizes, st.integers(1, 64)),
    out_size=st.tuples(_sizes, _sizes, st.integers(1, 64)),
    kernel=st.tuples(st.integers(1, 9), st.integers(1, 9)),
    stride=st.tuples(st.integers(1, 4), st.integers(1, 4)),
    padding=st.tuples(*(
        st.tuples(st.integers(0, 5), st.integers(0, 5)) for _ in range(4)
    )),
    dilation=st.integers(1, 4),
    groups=st.integers(1, 8),
    bias_used=st.booleans(),
)


@st.composite
def _pool_specs(draw):
    channels = draw(st.integers(1, 64))
    return PoolSpec(
        pool_type=draw(st.sampled_from(("Max", "Avg"))),
        in_size=(draw(_sizes), draw(_sizes), channels),
        out_size=(draw(_sizes), draw(_sizes), channels),
        kernel=(draw(st.integers(1, 9)), draw(st.integers(1, 9))),
        stride=(draw(st.integers(1, 4)), draw(st.integers(1, 4))),
        padding=tuple(draw(st.integers(0, 5)) for _ in range(4)),
        dilation=draw(st.integers(1, 4)),
        bias_used=draw(st.booleans()),
    )


_full_specs = st.builds(
    FullSpec,
    in_size=st.integers(1, 100000),
    out_size=st.integers(1, 100000),
    act_fun=st.one_of(st.none(), _token),
)

_mf_specs = st.builds(
    MFSpec,
    op_name=_token,
    in_size=st.one_of(st.tuples(_sizes), st.tuples(_sizes, _sizes, _sizes)),
    out_size=st.one_of(st.tuples(_sizes), st.tuples(_sizes, _sizes, _sizes)),
    values=st.lists(
        _token.filter(lambda s: s != "Null"), max_size=3
    ).map(tuple),
)

_any_spec = st.one_of(_conv_specs, _pool_specs(), _full_specs, _mf_specs)

_connects = st.one_of(
    st.none(),
    st.lists(st.integers(1, 999), min_size=1, max_size=5, unique=True).map(
        lambda xs: tuple(sorted(xs))
    ),
)


@settings(max_examples=200, deadline=None)
@given(spec=_any_spec, uid=st.integers(1, 999), connect=_connects)
def test_every_rendered_line_parses_back(spec, uid, connect):
    line = render_unit(spec, uid, connect)
    assert classify_line(line.text) == kind_of(spec)
    parsed_uid, parsed_spec, parsed_connect = parse_line(line.text)
    assert parsed_uid == uid
    assert parsed_spec == spec
    assert parsed_connect == connect
    assert render_unit(parsed_spec, parsed_uid, parsed_connect).text == line.text
