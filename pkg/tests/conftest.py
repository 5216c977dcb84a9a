from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from ultraforest.core import validate_space
from ultraforest.tree import RootedTree, tree_to_space
from ultraforest.unrooted import UnrootedTree

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def space_from_rows(rows, points):
    matrix = [[Fraction(v) for v in row] for row in rows]
    return validate_space(matrix, list(points))


def build_uniform_tree(degrees, labels):
    """Tree where every node at level i has degrees[i] children labeled
    labels[i]; levels beyond the lists are leaves."""
    flat_labels, flat_children, flat_points = [], [], []
    counter = {"leaf": 0}

    def make(level):
        if level == len(degrees):
            counter["leaf"] += 1
            flat_labels.append(Fraction(0))
            flat_children.append(())
            flat_points.append(f"x{counter['leaf']}")
            return len(flat_labels) - 1
        kids = tuple(make(level + 1) for _ in range(degrees[level]))
        flat_labels.append(Fraction(labels[level]))
        flat_children.append(kids)
        flat_points.append(None)
        return len(flat_labels) - 1

    root = make(0)
    return RootedTree(flat_labels, flat_children, flat_points, root=root)


@pytest.fixture
def isosceles():
    """The {1;2,2} triangle: d(a,b)=1, d(a,c)=d(b,c)=2."""
    return space_from_rows([[0, 1, 2], [1, 0, 2], [2, 2, 0]], ["a", "b", "c"])


@pytest.fixture
def isosceles_scaled():
    """Same order type as isosceles: d(a,b)=3, d(a,c)=d(b,c)=5."""
    return space_from_rows([[0, 3, 5], [3, 0, 5], [5, 5, 0]], ["a", "b", "c"])


@pytest.fixture
def equilateral():
    return space_from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]], ["a", "b", "c"])


@pytest.fixture
def perfect_binary4():
    return space_from_rows(
        [[0, 1, 2, 2], [1, 0, 2, 2], [2, 2, 0, 1], [2, 2, 1, 0]],
        ["a", "b", "c", "d"],
    )


@pytest.fixture
def two_points():
    return space_from_rows([[0, 1], [1, 0]], ["a", "b"])


@pytest.fixture
def singleton():
    return space_from_rows([[0]], ["a"])


def figure16_tree():
    """Sixteen-point tree: root 4 over leaf pair x1,x2 plus subtrees
    labeled 3 and 2, with four label-1 nodes at depth 2."""
    labels, children, points = [], [], []

    def leaf(p):
        labels.append(Fraction(0))
        children.append(())
        points.append(p)
        return len(labels) - 1

    def inner(label, kids):
        labels.append(Fraction(label))
        children.append(tuple(kids))
        points.append(None)
        return len(labels) - 1

    t11 = inner(1, [leaf("x8"), leaf("x9")])
    t12 = inner(1, [leaf("x10"), leaf("x11")])
    t13 = inner(1, [leaf("x12"), leaf("x13")])
    s1 = inner(3, [leaf("x3"), leaf("x4"), t11, t12, t13])
    t21 = inner(1, [leaf("x14"), leaf("x15"), leaf("x16")])
    s2 = inner(2, [leaf("x5"), leaf("x6"), leaf("x7"), t21])
    root = inner(4, [leaf("x1"), leaf("x2"), s1, s2])
    return RootedTree(labels, children, points, root=root)


@pytest.fixture(name="figure16_tree")
def figure16_tree_fixture():
    return figure16_tree()


@pytest.fixture
def figure16(figure16_tree):
    return tree_to_space(figure16_tree)


FIGURE16_EDGES = [
    ("x1", "x2"),
    ("x2", "x3"),
    ("x3", "x4"),
    ("x2", "x5"),
    ("x5", "x6"),
    ("x6", "x7"),
    ("x4", "x8"),
    ("x8", "x9"),
    ("x4", "x10"),
    ("x10", "x11"),
    ("x4", "x12"),
    ("x12", "x13"),
    ("x7", "x14"),
    ("x14", "x15"),
    ("x15", "x16"),
]

FIGURE16_LABELS = {
    "x1": 4, "x2": 4,
    "x3": 3, "x4": 3,
    "x5": 2, "x6": 2, "x7": 2,
    "x8": 1, "x9": 1, "x10": 1, "x11": 1, "x12": 1, "x13": 1,
    "x14": 1, "x15": 1, "x16": 1,
}


@pytest.fixture
def figure16_unrooted():
    labels = {v: Fraction(l) for v, l in FIGURE16_LABELS.items()}
    return UnrootedTree(list(labels), FIGURE16_EDGES, labels)


@pytest.fixture
def homogeneous24():
    """Root degree 4, then 2, then 3, labels (3,2,1): the level-uniform
    24-point space whose point spectra all equal {0,1,2,3}."""
    return tree_to_space(build_uniform_tree((4, 2, 3), (3, 2, 1)))


@pytest.fixture
def perfect27():
    """Perfect strictly 3-ary tree of height 3."""
    return tree_to_space(build_uniform_tree((3, 3, 3), (3, 2, 1)))
