import logging
from typing import Any, Callable, Dict

from backend.src.api.models import RegionSpec
from backend.src.errors import EnumerationCapError
from backend.src.graph.state import RegionAuditState
from backend.src.services.exact import LaurentPoly, lp_to_json
from backend.src.services.identity import closed_route
from backend.src.services.lgv import tiling_gf
from backend.src.services.oracle import family_gf

logger = logging.getLogger("qhex-graph")

ROUTES = ("family", "lgv", "closed")


def _region(state: RegionAuditState) -> RegionSpec:
    return RegionSpec.of(state["m"], state["k"], state["dents"])


def _run_route(state: RegionAuditState, route: str, compute: Callable[[RegionSpec], LaurentPoly]) -> Dict[str, Any]:
    if route not in state.get("routes", ROUTES):
        return {"errors": []}
    logger.info(f"---- [Node:{route.capitalize()}] m={state['m']} k={state['k']} dents={state['dents']}")
    try:
        poly = compute(_region(state))
        return {"results": {route: lp_to_json(poly)}}
    except EnumerationCapError as e:
        logger.error(f"{route} route hit the enumeration cap: {e}")
        return {"errors": [f"{route}: {e}"], "cap_exceeded": True}
    except Exception as e:
        logger.error(f"{route} route failed: {e}")
        return {"errors": [f"{route}: {e}"]}


# Node 1 : brute-force enumeration of vertex-disjoint path families
def family_node(state: RegionAuditState) -> Dict[str, Any]:
    return _run_route(state, "family", lambda region: family_gf(region, state.get("cap")))


# Node 2 : determinant of the single-path generating functions
def lgv_node(state: RegionAuditState) -> Dict[str, Any]:
    return _run_route(state, "lgv", tiling_gf)


# Node 3 : prefactor times the product formula at q^4
def closed_node(state: RegionAuditState) -> Dict[str, Any]:
    return _run_route(state, "closed", closed_route)


# Node 4 : compare whatever the routes produced
def reconcile_node(state: RegionAuditState) -> Dict[str, Any]:
    results = state.get("results", {})
    if state.get("cap_exceeded"):
        status = "CAP"
    elif state.get("errors"):
        status = "FAIL"
    elif len(set(results.values())) > 1:
        status = "DISAGREE"
        logger.error(f"Routes disagree: {results}")
    elif not results:
        status = "FAIL"
    else:
        status = "PASS"
    final_poly = next(iter(results.values())) if status == "PASS" else None
    logger.info(f"---- [Node:Reconcile] status={status} routes={sorted(results)}")
    return {"final_status": status, "final_poly": final_poly}
