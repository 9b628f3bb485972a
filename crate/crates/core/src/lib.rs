//! Exact-arithmetic kernel for vertex operator algebras.

pub mod assoc;
pub mod check;
pub mod commands;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod scalar_ext;
pub mod voa;
pub mod zhu;
