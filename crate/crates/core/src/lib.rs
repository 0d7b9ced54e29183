pub mod algebra;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod field;
pub mod graded;
pub mod ideal;
pub mod matrix;
pub mod quotient;
pub mod report;
