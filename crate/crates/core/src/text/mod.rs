//! Text formats: S-expressions for exact objects and an infix syntax for input.

mod infix;
mod sexp;

pub use infix::{
    form_infix, parse_form_any, parse_infix_form, parse_infix_rat, parse_rat_any, rat_infix,
};
pub use sexp::{
    field_from_sexp, field_to_sexp, form_from_sexp, form_to_sexp, parse_form, parse_rat,
    poly_from_sexp, poly_to_sexp, print_form, print_rat, rat_from_sexp, rat_to_sexp, Sexp,
};
