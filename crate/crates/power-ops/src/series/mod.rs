pub mod laurent;
pub mod trunc;

pub use laurent::PadicLaurent;
pub use trunc::{series_text, series_text_with_tail, solve_fixed_point, Coeff, TruncSeries};
