//! Smooth fields on charts, exterior calculus and flows.

pub mod field;
pub mod flow;
pub mod ops;

pub use field::{
    compose_form, compose_jets, one_form_coeffs, values,
    Chart, ChartMap, ComplexForm, Diffeo, Evaluator, Form, FormJet, GvField, GvJet, ScalarField,
    VectorField,
};
pub use flow::{
    flow, flow_diffeo, flow_map, time_flow_diffeo, time_flow_map, TimeVectorField,
    DEFAULT_STEPS_PER_UNIT,
};
pub use ops::*;
