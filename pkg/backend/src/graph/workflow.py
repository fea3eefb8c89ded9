'''
The region pipeline as a langgraph DAG:
START -> family -> lgv -> closed -> reconcile -> END
Each route node only runs the routes requested in the state.
'''
from langgraph.graph import StateGraph, END
from backend.src.graph.state import RegionAuditState
from backend.src.graph.nodes import (
    family_node,
    lgv_node,
    closed_node,
    reconcile_node,
)


def create_graph():
    '''
    Constructs and compiles the region workflow
    Returns :
    Compiled Graph: runnable graph object for execution
    '''
    workflow = StateGraph(RegionAuditState)
    workflow.add_node("family", family_node)
    workflow.add_node("lgv", lgv_node)
    workflow.add_node("closed", closed_node)
    workflow.add_node("reconcile", reconcile_node)
    workflow.set_entry_point("family")
    workflow.add_edge("family", "lgv")
    workflow.add_edge("lgv", "closed")
    workflow.add_edge("closed", "reconcile")
    workflow.add_edge("reconcile", END)
    return workflow.compile()


app = create_graph()


def run_region(m: int, k: int, dents, routes=("family", "lgv", "closed"), cap=None) -> dict:
    initial_inputs = {
        "m": m,
        "k": k,
        "dents": list(dents),
        "routes": list(routes),
        "cap": cap,
        "results": {},
        "errors": [],
        "cap_exceeded": False,
    }
    return app.invoke(initial_inputs)
