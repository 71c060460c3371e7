"""Exact synthesis toolkit over the cyclotomic rings Z[zeta_n], n in {3, 8, 9}.

Subpackages: exact ring arithmetic (rings), derivative vectors and the
chi-adic valuation (taylor), localized vectors/matrices (linalg), gate
alphabets and monomial tables (gates), the three reduction engines (synth),
unit-vector enumeration by quadratic forms (enumeration), and a JSON CLI
(cli).
"""

from .rings import (
    CycInt,
    NotDivisible,
    RingSpec,
    SpecMismatch,
    abs_sq,
    chi,
    conj,
    eval_at_one_mod_p,
    from_int,
    mul,
    p_unit,
    reduce_poly,
    ring_spec,
    try_div_chi,
    zeta_pow,
)
from .taylor import (
    TaylorVec,
    derivs_mod_p,
    gde,
    gde_oracle,
    phi_derivative_table,
    taylor_mod_p,
)
from .linalg import (
    LocElem,
    LocMatrix,
    LocVector,
    dagger,
    elem_from_json,
    elem_to_json,
    identity,
    is_unit_vector,
    is_unitary,
    mat_mul,
    mat_vec,
    matrix_from_json,
    matrix_to_json,
    normalize,
    normalize_matrix,
    normalize_vector,
    sde,
    to_real_tau_basis,
    vector_from_json,
    vector_to_json,
)
from .gates import (
    GateSym,
    GateWord,
    NotMonomial,
    Regime,
    TableIncomplete,
    WordSyntaxError,
    gate_matrix,
    monomial_decompose,
    parse_word,
    print_word,
    random_word,
    word_to_matrix,
)
from .synth import (
    Obstructed,
    ReduceStep,
    SynthStatus,
    SynthesisResult,
    qubit_choose_k,
    qubit_synthesize,
    qutritD_delta,
    qutritD_greedy,
    qutritD_reduce_step,
    qutritR_synthesize,
)
from .enumeration import (
    FormSolution,
    NotSde3Form,
    QuadTarget,
    check_orthogonal_sde3,
    eisenstein_reps,
    enumerate_form_solutions,
    enumerate_unit_vectors,
    factor_sde3_unitary,
    quad_forms,
    quad_target,
)

__version__ = "0.1.0"
