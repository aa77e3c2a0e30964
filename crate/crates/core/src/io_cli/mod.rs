//! Text and JSON front end shared by the command-line tool.

pub mod json;
pub mod parse;

pub use json::{format_json, ToJson};
pub use parse::{format_poly, parse, parse_poly, PolyExpr, MAX_PARSE_DEGREE};
