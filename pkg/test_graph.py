from fractions import Fraction

from backend.src.graph.nodes import ROUTES, closed_node, family_node, reconcile_node
from backend.src.graph.state import merge_results
from backend.src.graph.workflow import app, run_region
from backend.src.services.exact import LaurentPoly, lp_from_json, lp_to_json

HALF_Q = LaurentPoly.from_dict({-1: Fraction(1, 2), 1: Fraction(1, 2)})


def test_all_routes_agree_on_a_single_step_region():
    final_state = run_region(1, 1, [0])
    assert final_state["final_status"] == "PASS"
    assert sorted(final_state["results"]) == sorted(ROUTES)
    assert lp_from_json(final_state["final_poly"]) == HALF_Q
    assert final_state["errors"] == []


def test_single_route():
    final_state = run_region(2, 0, [0, 1], routes=["closed"])
    assert list(final_state["results"]) == ["closed"]
    assert final_state["final_status"] == "PASS"


def test_vanishing_region_passes_with_zero():
    final_state = run_region(2, 0, [1, 2])
    assert final_state["final_status"] == "PASS"
    assert lp_from_json(final_state["final_poly"]).is_zero()


def test_enumeration_cap_is_reported():
    final_state = run_region(2, 0, [0, 1], routes=["family"], cap=1)
    assert final_state["final_status"] == "CAP"
    assert final_state["cap_exceeded"] is True
    assert any(e.startswith("family:") for e in final_state["errors"])


def test_route_nodes_skip_unrequested_routes():
    state = {"m": 1, "k": 0, "dents": [0], "routes": ["lgv"], "cap": None}
    assert family_node(state) == {"errors": []}
    assert closed_node({**state, "routes": ["closed"]}) == {"results": {"closed": lp_to_json(LaurentPoly.one())}}


def test_reconcile_statuses():
    one, zero = lp_to_json(LaurentPoly.one()), lp_to_json(LaurentPoly.zero())
    base = {"errors": [], "cap_exceeded": False}
    assert reconcile_node({**base, "results": {"family": one, "lgv": one}})["final_status"] == "PASS"
    assert reconcile_node({**base, "results": {"family": one, "lgv": zero}}) == {"final_status": "DISAGREE", "final_poly": None}
    assert reconcile_node({**base, "results": {}})["final_status"] == "FAIL"
    assert reconcile_node({**base, "results": {"lgv": one}, "errors": ["family: boom"]})["final_status"] == "FAIL"
    assert reconcile_node({**base, "results": {}, "cap_exceeded": True})["final_status"] == "CAP"


def test_merge_results():
    assert merge_results({"family": "a"}, {"lgv": "b"}) == {"family": "a", "lgv": "b"}


def test_graph_is_compiled():
    assert hasattr(app, "invoke")
