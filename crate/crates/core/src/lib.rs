pub mod caps;
pub mod ci;
pub mod constructions;
pub mod error;
pub mod group;
pub mod interchange;
pub mod iso;
pub mod map;
pub mod notation;
pub mod perm;
pub mod report;
pub mod reproduce;
