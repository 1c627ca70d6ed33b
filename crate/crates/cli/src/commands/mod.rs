mod exact;
mod experiment;
mod simulate;
mod tw_table;
mod verify;

pub use exact::exact;
pub use experiment::experiment;
pub use simulate::simulate;
pub use tw_table::tw_table;
pub use verify::{verify, IdentityRecord};
