use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("map is not square: {coords} coordinates over {vars} variables")]
    NonSquareMap { coords: usize, vars: usize },
    #[error("polyhedron is not full-dimensional")]
    NotFullDimensional,
    #[error("map is not an isomorphism: {0}")]
    NotInvertible(String),
    #[error(
        "regular value search exhausted {attempts} attempts; \
         last candidate met the image of a facet of piece {piece}"
    )]
    RetriesExhausted { attempts: u32, piece: usize },
}
