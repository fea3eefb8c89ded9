import operator

from typing import Annotated, Dict, List, Optional, TypedDict


def merge_results(left: Dict[str, str], right: Dict[str, str]) -> Dict[str, str]:
    # each node contributes the result of its own route
    return {**left, **right}


# Define the state that gets passed between the route nodes
class RegionAuditState(TypedDict):
    '''
    Data schema for one region computation: the region parameters, the routes
    requested, what each route produced, and the reconciled verdict.
    '''
    # input parameters
    m: int
    k: int
    dents: List[int]
    routes: List[str]  # subset of family, lgv, closed
    cap: Optional[int]

    # per-route polynomials, keyed by route name
    results: Annotated[Dict[str, str], merge_results]

    # final deliverables
    final_status: str  # PASS, DISAGREE, CAP, FAIL
    final_poly: Optional[str]

    # exceptions raised inside route nodes
    errors: Annotated[List[str], operator.add]
    cap_exceeded: bool
