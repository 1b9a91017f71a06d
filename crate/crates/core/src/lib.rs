pub mod abelian;
pub mod cli;
pub mod cochain;
pub mod deligne;
pub mod nerve;
pub mod verify;
