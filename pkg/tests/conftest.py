import numpy as np
import pytest

from campussim.network import (
    BipartiteNetwork,
    ClassSection,
    Person,
)


def tiny_network() -> BipartiteNetwork:
    """Hand-built 6-student, 3-class, 3-instructor campus for unit tests.

    Every student has degree 2, every instructor degree 1, all classes
    within capacity, so validate() is clean.
    """
    students = [
        Person(f"S{i}", "student", "MATH" if i < 3 else "CHEM",
               academic_level=1 + i % 2)
        for i in range(6)
    ]
    instructors = [Person(f"I{j}", "instructor", "MATH") for j in range(3)]
    classes = [
        ClassSection("C0", "MATH", 1, capacity=10,
                     meetings=((0, 1.0), (3, 1.0))),
        ClassSection("C1", "MATH", 2, capacity=10,
                     meetings=((1, 1.5), (4, 1.5))),
        ClassSection("C2", "CHEM", 1, capacity=10,
                     meetings=((2, 2.0),)),
    ]
    edges = {(f"I{j}", f"C{j}") for j in range(3)}
    for i in range(6):
        edges.add((f"S{i}", f"C{i % 3}"))
        edges.add((f"S{i}", f"C{(i + 1) % 3}"))
    return BipartiteNetwork(students + instructors, classes, edges)


@pytest.fixture
def tiny_net() -> BipartiteNetwork:
    return tiny_network()


@pytest.fixture(scope="session")
def desk_campus():
    """Desk-scale synthetic campus shared by the slower integration tests."""
    from campussim.enrollment import generate_synthetic_campus

    return generate_synthetic_campus(scale=0.043, seed=1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
