pub mod gf2;
pub mod scomplex;
pub mod corners;
pub mod bcomplex;
pub mod syzygy;
pub mod builders;
pub mod cli;
