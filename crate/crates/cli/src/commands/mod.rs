//! One module per subcommand.

pub mod bands;
pub mod edges;
pub mod validate;
pub mod wavefunction;
pub mod zeromodes;
