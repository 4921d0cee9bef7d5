//! Classicality indicators for unitarily invariant ensembles of random qubits
//! and qutrits.
//!
//! A state is *classical* when its Wigner function is non-negative over the
//! whole phase space. For unitarily invariant ensembles this is a purely
//! spectral question: the state is classical iff the descending spectrum of the
//! density matrix paired with the ascending spectrum of the Stratonovich–Weyl
//! kernel is non-negative. The indicator `Q` is the probability of drawing a
//! classical state from an ensemble, resolved per unitary-orbit stratum.
//!
//! Three independent routes compute `Q`:
//!
//! - closed forms (every qubit ensemble, Hilbert–Schmidt qutrits),
//! - adaptive nested Gauss–Kronrod quadrature of the joint eigenvalue density,
//! - Monte Carlo sampling of spectra with seeded, split RNG streams.
//!
//! Modules:
//!
//! - [`spectra`]: ordered spectra, degeneracy types, strata, qutrit polar map.
//! - [`ensembles`]: Hilbert–Schmidt, Bures and BKM joint densities and samplers.
//! - [`wigner`]: kernel spectra and the spectral classicality test.
//! - [`indicators`]: `Q` by all three methods, ζ-minimization and ratios.
//! - [`quadrature`], [`optimize`]: numerical engines used by the above.

pub mod ensembles;
pub mod error;
pub mod indicators;
pub mod optimize;
pub mod quadrature;
pub mod spectra;
pub mod wigner;

pub use error::{Error, Result};
