import os
import json
from typing import Any, Dict, List, Tuple

import pandas as pd
import streamlit as st
from dotenv import load_dotenv

import closed_forms
from degree_engine import DEFAULT_SEED, InconsistencyError, fg_polynomial
from exact_algebra import NotDivisibleError, format_rational
from methods import METHODS, run_methods
from root_systems import parse_group_spec, parse_weight_spec

load_dotenv()

# --------------- CONFIG ---------------
DEFAULT_GROUP = os.getenv("DUALDEG_APP_GROUP", "GL8").strip()
DEFAULT_WEIGHT = os.getenv("DUALDEG_APP_WEIGHT", "L:1,1,1,0,0,0,0,0").strip()
CACHE_TTL = int(os.getenv("DUALDEG_APP_CACHE_TTL", "86400").strip())

FAMILY_LABELS = {
    "boole": "a·L1",
    "grassmannian": "L1 + … + Lk (k = a)",
    "gammaab": "(a+b)·L1 + b·(L2 + … + Ln-1)",
    "abn": "a·L1 + b·L2",
    "aa": "a·L1 + a·L2",
}

ComputeErrors = (ValueError, RuntimeError, ArithmeticError)


# --------------- CACHED COMPUTATIONS ---------------
@st.cache_data(ttl=CACHE_TTL, show_spinner=False)
def compute_degree(group: str, weight: str, methods: Tuple[str, ...], seed: int) -> Dict[str, Any]:
    """Report dict for one group/weight (cached per input tuple)."""
    rs = parse_group_spec(group)
    lam = parse_weight_spec(rs, weight)
    return run_methods(rs, lam, methods, seed).to_dict()


@st.cache_data(ttl=CACHE_TTL, show_spinner=False)
def compute_fg(group: str, basis: str, seed: int) -> Dict[str, Any]:
    fg = fg_polynomial(parse_group_spec(group), seed)
    return {"group": fg.group, "polynomial": fg.render(basis), "terms": len(fg.in_x)}


@st.cache_data(ttl=CACHE_TTL, show_spinner=False)
def compute_family(kind: str, n: int, a: int, b: int) -> Dict[str, Any]:
    value = closed_forms.family_degree(kind, n, a, b)
    lam = closed_forms.family_weight(kind, n, a, b)
    return {"degree": format_rational(value), "weight": str(lam)}


def _report_rows(report: Dict[str, Any]) -> List[Dict[str, str]]:
    return [{"field": k, "value": ", ".join(map(str, v)) if isinstance(v, list) else str(v)} for k, v in report.items()]


def _show_error(e: Exception) -> None:
    if isinstance(e, (InconsistencyError, NotDivisibleError)):
        st.error(f"Inconsistent computation: {e}")
    else:
        st.error(f"{type(e).__name__}: {e}")


# --------------- PAGE ---------------
st.set_page_config(page_title="dualdeg - Discriminant Degrees", layout="wide")
st.title("Discriminant degrees")
st.caption("Degree of the projective dual of the closed orbit of an irreducible representation.")

with st.sidebar:
    st.header("Input")
    group = st.text_input("Group", DEFAULT_GROUP, key="group", help="e.g. GL8, A2, B2, G2, A1+A2, GL2xGL2xGL3")
    weight = st.text_input("Highest weight", DEFAULT_WEIGHT, key="weight",
                           help="L:… ambient coordinates or w:… fundamental-weight coordinates")
    methods = st.multiselect("Methods", list(METHODS), default=["orbit"], key="methods")
    seed = int(st.number_input("Seed", value=DEFAULT_SEED, step=1, key="seed"))

tab_degree, tab_fg, tab_family = st.tabs(["Degree", "F_G polynomial", "Closed formulas"])

with tab_degree:
    if not methods:
        st.warning("Pick at least one method.")
    else:
        try:
            report = compute_degree(group, weight, tuple(methods), seed)
        except ComputeErrors as e:
            _show_error(e)
        else:
            c = st.columns([1, 1, 2])
            c[0].metric("Degree", str(report["degree"]))
            c[1].metric("Hypersurface", "yes" if report["hypersurface"] else "no")
            c[2].caption(f"Methods: {', '.join(report['methods'])} · seeds {report['seeds']}")
            st.dataframe(pd.DataFrame(_report_rows(report)), hide_index=True, use_container_width=True)
            with st.expander("JSON"):
                st.code(json.dumps(report, sort_keys=True), language="json")

with tab_fg:
    basis = st.radio("Variables", ["x", "y"], horizontal=True, key="basis",
                     help="x = y - 1; the degree is (ε/|W_λ|)·F_G(y)")
    if st.button("Compute F_G", key="fg_go"):
        try:
            fg = compute_fg(group, basis, seed)
        except ComputeErrors as e:
            _show_error(e)
        else:
            st.caption(f"{fg['group']}: {fg['terms']} terms")
            st.code(fg["polynomial"], language="text")

with tab_family:
    kind = st.selectbox("Family", list(closed_forms.FAMILIES), format_func=lambda k: f"{k}: {FAMILY_LABELS[k]}", key="family")
    fc = st.columns(3)
    n = int(fc[0].number_input("n", min_value=2, value=4, step=1, key="family_n"))
    a = int(fc[1].number_input("a", min_value=1, value=2, step=1, key="family_a"))
    b = int(fc[2].number_input("b", min_value=0, value=1, step=1, key="family_b"))
    try:
        fam = compute_family(kind, n, a, b)
    except ComputeErrors as e:
        _show_error(e)
    else:
        st.metric(f"Degree for GL({n}), {fam['weight']}", fam["degree"])
