"""Punctured Reed-Muller codes over Hermitian one-point AG codes."""

from .gf import (
    Field,
    FieldElement,
    discrete_log,
    field_build,
    find_irreducible,
    primitive_element,
)
from .sidon import SidonSequence, sidon_build, sidon_shift, sidon_verify
from .mpoly import MultiPoly, PointSet, evaluate, monomial_basis, rm_encode
from .curve import (
    CurveFunction,
    HermitianField,
    Place,
    evaluate_function,
    function_with_pole,
    hermitian_field,
    local_expansion,
    rational_places,
    rr_basis,
    tower_params,
)
from .agcode import OnePointCode, ag_build, ag_encode
from .mfp import MfPair, mfp_build, mfp_verify, pi_map, psi_map, star
from .construct import (
    CodeParams,
    ConstructionI,
    ConstructionII,
    ag_to_rm,
    build_T1,
    build_T2,
    code_params,
    load_spec,
    rm_to_ag,
    save_spec,
)
from .listdec import (
    DecoderConfig,
    ListDecodeError,
    ListResult,
    ag_interpolate,
    ag_list_recover,
    ag_root_find,
    decode_T1,
    decode_T2,
    rs_list_decode,
)
from .oracle import exact_min_distance, list_ball_oracle, random_puncture_experiment

__all__ = [
    "Field", "FieldElement", "discrete_log", "field_build", "find_irreducible",
    "primitive_element",
    "SidonSequence", "sidon_build", "sidon_shift", "sidon_verify",
    "MultiPoly", "PointSet", "evaluate", "monomial_basis", "rm_encode",
    "CurveFunction", "HermitianField", "Place", "evaluate_function",
    "function_with_pole", "hermitian_field", "local_expansion",
    "rational_places", "rr_basis", "tower_params",
    "OnePointCode", "ag_build", "ag_encode",
    "MfPair", "mfp_build", "mfp_verify", "pi_map", "psi_map", "star",
    "CodeParams", "ConstructionI", "ConstructionII", "ag_to_rm", "build_T1",
    "build_T2", "code_params", "load_spec", "rm_to_ag", "save_spec",
    "DecoderConfig", "ListDecodeError", "ListResult", "ag_interpolate",
    "ag_list_recover", "ag_root_find", "decode_T1", "decode_T2",
    "rs_list_decode",
    "exact_min_distance", "list_ball_oracle", "random_puncture_experiment",
]
