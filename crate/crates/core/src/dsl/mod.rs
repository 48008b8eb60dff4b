//! The text format for categories with weak equivalences and their payloads.

pub mod ast;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod serialize;

pub use lexer::{Pos, SyntaxError};
pub use model::{load_model, resolve, LoadError, Model};
pub use parser::parse_spec;
pub use serialize::serialize_spec;
