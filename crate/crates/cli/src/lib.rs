pub mod format;
pub mod parallel;
pub mod setfile;
pub mod verify;
