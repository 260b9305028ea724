//! Trapped Rydberg ion physics: trap and crystal properties, microwave
//! dressing of Rydberg levels, spin-chain dynamics and a two-ion phase gate.

pub mod crystal;
pub mod dressing;
pub mod dynamics;
pub mod gate;
pub mod physcore;
pub mod spinchain;
pub mod trap;
