//! Moore paths and the finite windows `K^[a,b]` of the path complex.

mod path;
mod window;

pub use path::MoorePath;
pub use window::{
    count_paths, endpoint_map, p_homotopic, PHomotopy, PHomotopySearch, WindowedPathComplex,
};
