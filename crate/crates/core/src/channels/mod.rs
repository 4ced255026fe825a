//! CPTP maps as Kraus families and Stinespring isometries, with the smooth
//! exponential parametrization searched by the frontier optimizer.

mod json;
mod kraus;
mod params;
mod presets;
mod stinespring;

pub use json::{ChannelJson, ChannelSpec};
pub use kraus::{apply_channel, KrausChannel};
pub use params::{params_to_isometry, ChannelDims, ChannelParams};
pub use presets::ChannelPreset;
pub use stinespring::{apply_isometry, kraus_to_stinespring, random_isometry, Dilatable, StinespringIsometry};
