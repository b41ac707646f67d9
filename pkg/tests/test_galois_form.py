import pytest

from rootdual.galois_form import (AbstractCyclic, FormError, PAdic, ParseError, Real, commutes_with_minus_w0,
                                  make_form, parse_field, parse_spec, simple_root_orbits)
from rootdual.groups import cyclic
from rootdual import build


@pytest.mark.parametrize("spec,roots,gamma", [
    ("A3-sc@R", 12, "C1"), ("2A3-ad@Qp5", 12, "C2"), ("3D4-sc@Qp3", 24, "C3"), ("6D4-sc@Qp7", 24, "S3"),
    ("2E6-sc@R", 72, "C2"), ("U4@Qp3", 12, "C2"), ("GL3@R", 6, "C1"), ("Sp6@Qp2", 18, "C1"),
    ("SO7@R", 18, "C1"), ("SO8@R", 24, "C1"), ("SU3@R", 6, "C2"), ("PGL2@Qp3", 2, "C1"),
    ("A1xA1-sc@R", 4, "C1"), ("2D5-ad@C4", 40, "C2"),
])
def test_parse(spec, roots, gamma):
    f = parse_spec(spec)
    assert len(f.brd.roots) == roots
    assert f.gamma.name == gamma


@pytest.mark.parametrize("spec,pos", [("A3", 2), ("2Z3@R", 1), ("A3-xx@R", 2), ("3A3@R", 0),
                                      ("A3@Qp4", 3), ("6D4-sc@R", 0), ("A2-iso=1,x@R", 7)])
def test_parse_errors_report_position(spec, pos):
    with pytest.raises(ParseError) as exc:
        parse_spec(spec)
    assert exc.value.position == pos


def test_fields():
    assert isinstance(parse_field("R"), Real)
    assert parse_field("Qp7") == PAdic(7)
    assert parse_field("C6") == AbstractCyclic(6)
    with pytest.raises(FormError):
        parse_field("Qp9")


def test_real_gamma_order_bound():
    with pytest.raises(FormError):
        make_form(build("D4"), cyclic(3), [(2, 1, 3, 0)], Real())


def test_twist_must_be_diagram_automorphism():
    with pytest.raises(FormError):
        make_form(build("B3"), cyclic(2), [(2, 1, 0)], Real())


def test_orbits_and_dual():
    f = parse_spec("3D4-sc@Qp3")
    assert simple_root_orbits(f) == [(0, 2, 3), (1,)]
    d = f.dual()
    assert d.brd == f.brd.dual() and d.perms == f.perms
    assert commutes_with_minus_w0(f)


def test_real_structures():
    f = parse_spec("2A2-sc@R")
    rho = f.real_structure()
    assert [[sum(rho[i][k] * rho[k][j] for k in range(2)) for j in range(2)] for i in range(2)] == [[1, 0], [0, 1]]
    assert f.adjoint_real_structure() == [[0, -1], [-1, 0]]
    with pytest.raises(FormError):
        parse_spec("A2-sc@Qp3").real_structure()


def test_unitary_center_action():
    f = parse_spec("U3@R")
    # the connected center of U(n) is anisotropic: sigma acts by -1 on it
    det = [1, 1, 1]
    img = [sum(r[j] * det[j] for j in range(3)) for r in f.x_mats[f.sigma]]
    assert img == [-1, -1, -1]
