pub mod broadcast;
pub mod lp;
pub mod search;
pub mod weights;
