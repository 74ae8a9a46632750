pub mod error;
pub mod hyperboloid;
pub mod jacobi;
pub mod jets;
pub mod logan;
pub mod quad;
pub mod specfun;
pub mod spectral;
pub mod transform;
pub mod verify;
pub mod zerocount;
pub mod zeros;

pub use error::{Error, Result};
pub use jacobi::JacobiParams;
pub use specfun::SeriesConfig;
