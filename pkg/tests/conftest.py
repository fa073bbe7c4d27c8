"""Shared fixtures: the two reference networks, built in code.

The same networks also live in tests/fixtures/ as graph files; building
them here independently lets the file loader be checked against a second
route instead of against itself.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from arctext import ConvSpec, FullSpec, MFSpec, PoolSpec, build_graph

FIXTURES = Path(__file__).parent / "fixtures"


def _mf(op, shape, values=()):
    return MFSpec(op, shape, shape, values)


def resnet4_graph():
    conv7 = ConvSpec(
        in_size=(224, 224, 3), out_size=(112, 112, 64),
        kernel=(7, 7), stride=(2, 2),
        padding=((0, 3), (0, 3), (0, 3), (0, 3)),
    )
    conv3 = ConvSpec(
        in_size=(56, 56, 64), out_size=(56, 56, 64),
        kernel=(3, 3), stride=(1, 1),
        padding=((0, 1), (0, 1), (0, 1), (0, 1)),
    )
    nodes = [
        ("S", conv7),
        ("A", _mf("BN", (112, 112, 64))),
        ("B", _mf("ReLU", (112, 112, 64))),
        ("C", PoolSpec("Max", (112, 112, 64), (56, 56, 64), (3, 3), (2, 2), (1, 1, 1, 1))),
        ("D", conv3),
        ("F", _mf("BN", (56, 56, 64))),
        ("G", _mf("ReLU", (56, 56, 64))),
        ("H", conv3),
        ("I", _mf("BN", (56, 56, 64))),
        ("J", _mf("Addition", (56, 56, 64))),
        ("K", _mf("ReLU", (56, 56, 64))),
        ("L", PoolSpec("Avg", (56, 56, 64), (1, 1, 64), (56, 56), (1, 1))),
        ("E", FullSpec(64, 1000, "ReLU")),
    ]
    edges = [
        ("S", "A"), ("A", "B"), ("B", "C"), ("C", "D"), ("C", "J"),
        ("D", "F"), ("F", "G"), ("G", "H"), ("H", "I"), ("I", "J"),
        ("J", "K"), ("K", "L"), ("L", "E"),
    ]
    return build_graph(nodes, edges)


def branching25_graph():
    def conv(in_size, out_size, kernel, stride):
        return ConvSpec(in_size, out_size, kernel, stride)

    nodes = [
        ("S", conv((32, 32, 3), (32, 32, 3), (1, 1), (1, 1))),
        ("S2", _mf("ReLU", (32, 32, 3))),
        ("S3", _mf("BN", (32, 32, 3))),
        ("A1", conv((32, 32, 3), (16, 16, 10), (2, 2), (2, 2))),
        ("A2", _mf("ReLU", (16, 16, 10))),
        ("A3", _mf("BN", (16, 16, 10))),
        ("B1", conv((32, 32, 3), (32, 32, 10), (1, 1), (1, 1))),
        ("B2", _mf("ReLU", (32, 32, 10))),
        ("B3", _mf("BN", (32, 32, 10))),
        ("C1", conv((32, 32, 10), (16, 16, 10), (2, 2), (2, 2))),
        ("C2", _mf("ReLU", (16, 16, 10))),
        ("C3", _mf("BN", (16, 16, 10))),
        ("D1", conv((32, 32, 3), (16, 16, 3), (2, 2), (2, 2))),
        ("D2", _mf("ReLU", (16, 16, 3))),
        ("D3", _mf("BN", (16, 16, 3))),
        ("F1", conv((16, 16, 3), (16, 16, 10), (1, 1), (1, 1))),
        ("F2", _mf("ReLU", (16, 16, 10))),
        ("F3", _mf("BN", (16, 16, 10))),
        ("G1", conv((32, 32, 3), (31, 31, 10), (2, 2), (1, 1))),
        ("G2", _mf("BN", (31, 31, 10))),
        ("G3", _mf("ReLU", (31, 31, 10))),
        ("H", PoolSpec("Max", (31, 31, 10), (16, 16, 10), (2, 2), (2, 2), (1, 0, 1, 0))),
        ("I", _mf("Addition", (16, 16, 10))),
        ("J", FullSpec(2560, 512, "ReLU")),
        ("E", MFSpec("Dropout", (512,), (512,), ("0.5",))),
    ]
    edges = [
        ("S", "S2"), ("S2", "S3"),
        ("S3", "A1"), ("S3", "B1"), ("S3", "D1"), ("S3", "G1"),
        ("A1", "A2"), ("A2", "A3"), ("A3", "I"),
        ("B1", "B2"), ("B2", "B3"), ("B3", "C1"),
        ("C1", "C2"), ("C2", "C3"), ("C3", "I"),
        ("D1", "D2"), ("D2", "D3"), ("D3", "F1"),
        ("F1", "F2"), ("F2", "F3"), ("F3", "I"),
        ("G1", "G2"), ("G2", "G3"), ("G3", "H"), ("H", "I"),
        ("I", "J"), ("J", "E"),
    ]
    return build_graph(nodes, edges)


@pytest.fixture
def resnet4():
    return resnet4_graph()


@pytest.fixture
def branching25():
    return branching25_graph()


@pytest.fixture
def resnet4_text():
    return (FIXTURES / "resnet4.arctext").read_text(encoding="utf-8")


@pytest.fixture
def branching25_text():
    return (FIXTURES / "branching25.arctext").read_text(encoding="utf-8")


@pytest.fixture
def branching25_tieswap_text():
    return (FIXTURES / "branching25_tieswap.arctext").read_text(encoding="utf-8")
