import pytest

from phiseries.plane_graph import validate

# small graphs that are not 2-connected; the validator only admits them with
# every cut vertex on the outer walk


@pytest.fixture
def bowtie():
    return validate({
        "name": "bowtie", "vertices": ["c", "x1", "x2", "y1", "y2"], "root": "x1",
        "outer_face": ["c", "x1", "x2", "c", "y1", "y2"],
        "bounded_faces": [["c", "x2", "x1"], ["c", "y2", "y1"]],
    })


@pytest.fixture
def pendant():
    """Triangle with an extra edge hanging off one corner."""
    return validate({
        "name": "pendant", "vertices": ["a", "b", "c", "d"], "root": "a",
        "outer_face": ["a", "b", "c", "d", "c"], "bounded_faces": [["a", "c", "b"]],
    })


@pytest.fixture
def barbell():
    """Two triangles joined by a bridge c-d."""
    return validate({
        "name": "barbell", "vertices": ["a", "b", "c", "d", "e", "f"], "root": "b",
        "outer_face": ["a", "b", "c", "d", "e", "f", "d", "c"],
        "bounded_faces": [["a", "c", "b"], ["d", "f", "e"]],
    })


@pytest.fixture
def l8a7_raw():
    return {
        "name": "L8a7", "vertices": ["b1", "b2", "b3", "b4", "b5", "b6"], "root": "b1",
        "outer_face": ["b1", "b2", "b3", "b4"],
        "bounded_faces": [["b1", "b6", "b5", "b4"], ["b3", "b4", "b5", "b6"], ["b1", "b2", "b3", "b6"]],
    }
