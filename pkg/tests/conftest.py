import pytest

from tcone.polyring import VariableContext, variables


@pytest.fixture
def xyz():
    """The three-variable context of the five-lines example."""
    ctx = VariableContext(("x", "y", "z"))
    x, y, z = variables(ctx)
    return ctx, x, y, z


@pytest.fixture
def xy():
    ctx = VariableContext(("x", "y"))
    x, y = variables(ctx)
    return ctx, x, y


@pytest.fixture
def five_lines(xyz):
    """Generators xy and z(x^3 - y^2 + z^2) of the five-lines ideal."""
    ctx, x, y, z = xyz
    return ctx, x * y, z * (x**3 - y**2 + z**2)
