pub mod compare;
pub mod detect;
pub mod gen_sbm;
pub mod sweep;
