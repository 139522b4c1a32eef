import json

import pytest

from matroid_interdiction import (
    GraphicMatroid,
    LinearFn,
    MatroidInstance,
    ParamInterval,
)


@pytest.fixture
def p2() -> MatroidInstance:
    """Two parallel edges: e0 has weight lam, e1 has weight 1, on [-1, 3]."""
    return MatroidInstance(
        GraphicMatroid(2, ((0, 1), (0, 1))),
        (LinearFn(0, 1), LinearFn(1, 0)),
        ParamInterval.closed(-1, 3),
        "P2",
    )


@pytest.fixture
def c4() -> MatroidInstance:
    """The 4-cycle with constant weights 1, 2, 3, 4 on [0, 2]."""
    return MatroidInstance(
        GraphicMatroid(4, ((0, 1), (1, 2), (2, 3), (3, 0))),
        (LinearFn(1, 0), LinearFn(2, 0), LinearFn(3, 0), LinearFn(4, 0)),
        ParamInterval.closed(0, 2),
        "C4",
    )


@pytest.fixture
def c4p() -> MatroidInstance:
    """The 4-cycle with weights 1, 2, 3 and 2*lam on [0, 2]."""
    return MatroidInstance(
        GraphicMatroid(4, ((0, 1), (1, 2), (2, 3), (3, 0))),
        (LinearFn(1, 0), LinearFn(2, 0), LinearFn(3, 0), LinearFn(0, 2)),
        ParamInterval.closed(0, 2),
        "C4P",
    )


@pytest.fixture
def bridge() -> MatroidInstance:
    """A single edge; its only element is a coloop."""
    return MatroidInstance(
        GraphicMatroid(2, ((0, 1),)),
        (LinearFn(1, 0),),
        ParamInterval.closed(0, 1),
        "bridge",
    )


@pytest.fixture
def instance_file(tmp_path):
    """Write an instance dict (or MatroidInstance) to a temp JSON file."""

    def write(data, name="instance.json"):
        from matroid_interdiction.instances import dump_instance

        if isinstance(data, MatroidInstance):
            data = dump_instance(data)
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=2) + "\n")
        return str(path)

    return write
