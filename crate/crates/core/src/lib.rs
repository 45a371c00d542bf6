//! Delay-optimal cell association for networks mixing UAV base stations and
//! terrestrial macro cells.
//!
//! Users are spread over an area with an arbitrary density. Each node splits
//! its bandwidth evenly among the users it serves, so crowded cells are slow.
//! [`association::Instance::ot_association`] finds partitions that trade
//! signal strength against congestion by iterating the load-weighted rule
//! `argmin_l (a_l / W_l) F(v, s_l)`; [`association::Instance::snr_association`]
//! is the classical strongest-signal baseline.
//!
//! ```no_run
//! use otcell::association::{Instance, SolverConfig};
//! use otcell::scenario::Scenario;
//!
//! let scenario = Scenario::urban_hotspot(200.0)?;
//! let grid = scenario.density().build(*scenario.area(), 200, 200)?;
//! let inst = Instance::new(&scenario, &grid)?;
//! let snr = inst.snr_association();
//! let (ot, _trace) = inst.ot_association(&SolverConfig::default(), &snr)?;
//! println!("{} s -> {} s", inst.average_delay(&snr), inst.average_delay(&ot));
//! # Ok::<(), otcell::Error>(())
//! ```

pub mod association;
pub mod channel;
pub mod cli;
pub mod density;
pub mod error;
pub mod metrics;
pub mod oracle;
pub mod scenario;

pub use error::{Error, Result};
