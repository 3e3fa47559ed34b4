//! Jacobian elliptic fibrations on K3 surfaces polarized by
//! H ⊕ E₇(−1) ⊕ E₇(−1): Weierstrass models in raw and modular
//! coordinates, Kodaira classification, identity verification, moduli
//! bookkeeping and the heterotic gauge-algebra dictionary.

pub mod fibrations;
pub mod heterotic;
pub mod moduli;
pub mod weierstrass;
