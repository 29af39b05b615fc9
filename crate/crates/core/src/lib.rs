pub mod bijections;
pub mod egfseries;
pub mod exactalg;
pub mod permstats;
pub mod families;
pub mod grammarcalc;
pub mod verify;
