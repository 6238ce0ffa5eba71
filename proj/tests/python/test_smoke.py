import json
import os
from pathlib import Path

import pytest

import lepage_kit as lk

DIRICHLET = "m=2; n=1; L: order=1 1/2*(u[1;1,0]^2 + u[1;0,1]^2);"
JACOBIAN = "m=2; n=2; Ljac: order=1 u[1;1,0]*u[2;0,1] - u[1;0,1]*u[2;1,0];"


def test_parse_and_euler_lagrange():
    p = lk.parse_problem(DIRICHLET)
    assert (p.m, p.n) == (2, 1)
    el = p.lagrangian("L").euler_lagrange()
    assert str(el) == "(-u[1;0,2] - u[1;2,0])*theta[1;0,0] & w0"
    assert el == p.parse("-(u[1;2,0] + u[1;0,2]) * theta[1;0,0] & w0")


def test_lepage_and_closure():
    p = lk.parse_problem(JACOBIAN)
    lag = p.lagrangian("Ljac")
    theta = lag.lepage("principal")
    assert theta.contact_component(0) == p.parse(
        "(u[1;1,0]*u[2;0,1] - u[1;0,1]*u[2;1,0]) * w0")
    report = lag.closure()
    assert report["is_null"]
    assert report["d_theta_f"].is_zero()


def test_bicomplex_and_homotopy():
    p = lk.parse_problem("m=2; n=1; form a = u[1;1,0]^2 * theta[1;0,1] & dx[2];")
    a = p.form("a")
    assert p.d_h(p.d_h(a)).is_zero()
    assert (p.d_h(p.d_v(a)) + p.d_v(p.d_h(a))).is_zero()
    lhs = p.d_h(p.homotopy(a)) + p.homotopy(p.d_h(a))
    assert lhs == a


@pytest.mark.parametrize("fmt", ["text", "latex", "structured"])
def test_render_round_trip(fmt):
    p = lk.parse_problem("m=2; n=1; formal F order 1; form a = 3/4*F*theta[1;1,0] & w[1] - x[2]*dx[1] & dx[2];")
    a = p.form("a")
    assert p.parse_rendered(a.render(fmt), fmt) == a


def test_structured_schema():
    out, code = lk.run("el", DIRICHLET, format="structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == lk.SCHEMA
    assert doc["command"] == "el"


def test_parse_errors():
    with pytest.raises(lk.ParseError, match="dimension mismatch"):
        lk.parse_problem("m=2; n=1; form a = u[1;1] * dx[1];")
    with pytest.raises(lk.LepageError):
        lk.run("nope", DIRICHLET)


def test_appendix_and_goldens():
    assert all(ok for _, ok in lk.appendix_a(2))
    golden = Path(os.environ.get("LEPAGE_GOLDEN_DIR", Path(__file__).parent.parent / "golden"))
    out, code = lk.run("closure", (golden / "jacobian.lk").read_text(), lagrangian="Ljac")
    assert code == 0
    assert out == (golden / "closure_jacobian.txt").read_text()
