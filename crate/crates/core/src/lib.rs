//! Hammock localization of finite categories with weak equivalences.
//!
//! A [`relcat::RelCat`] is a finite category with a class of weak
//! equivalences. [`hammock`] builds the stages `L_n(X,Y)` of its hammock
//! mapping spaces, [`oracle`] decides equality of morphisms in the
//! localization by bounded word rewriting, [`homcert`] holds checkable
//! certificates that two functors between stages are homotopic, and
//! [`theorems`] constructs such certificates for the standard
//! comparisons.

pub mod category;
pub mod cli;
pub mod dsl;
pub mod exec;
pub mod fincat;
pub mod fixtures;
pub mod hammock;
pub mod homcert;
pub mod natural;
pub mod oracle;
pub mod relcat;
pub mod report;
pub mod theorems;
pub mod unionfind;
